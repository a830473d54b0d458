#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "solsurf/marcher.hpp"

using namespace solsurf;

namespace {

GridSpec axis(std::size_t n_u) { return GridSpec(-1.0, 1.0, n_u, 0.0, 0.0, 1); }

InitialStrip tanh_strip(const GridSpec& g) {
    InitialStrip s;
    s.G0.resize(g.n_u);
    s.Gv0.assign(g.n_u, complex(0.0, 0.0));
    for (std::size_t i = 0; i < g.n_u; ++i) s.G0[i] = complex(std::tanh(g.u(i)), 0.0);
    return s;
}

double max_dev_from_tanh(const GaussField& gf) {
    double worst = 0.0;
    for (std::size_t i = 0; i < gf.G.grid.n_u; ++i)
        for (std::size_t j = 0; j < gf.G.grid.n_v; ++j)
            worst = std::max(worst, std::abs(gf.G.at(i, j) - std::tanh(gf.G.grid.u(i))));
    return worst;
}

} // namespace

TEST_CASE("constants march to constants") {
    GridSpec g = axis(41);
    const complex c(0.3, 0.1);
    InitialStrip s;
    s.G0.assign(g.n_u, c);
    s.Gv0.assign(g.n_u, complex(0.0, 0.0));
    MarchConfig cfg;
    cfg.epsilon = 0.2;
    cfg.n_v = 9;
    GaussField out = march(s, 2.0, g, cfg);
    CHECK(out.G.grid.n_v == 9);
    double worst = 0.0;
    for (const complex& z : out.G.values) worst = std::max(worst, std::abs(z - c));
    CHECK(worst < 1e-10);
    // the data line is copied through untouched
    for (std::size_t i = 0; i < g.n_u; ++i) CHECK(out.G.at(i, 4) == c);
}

TEST_CASE("the tanh solution survives the strip") {
    GridSpec g = axis(401);
    MarchConfig cfg;
    cfg.epsilon = 0.2;
    cfg.n_v = 41;
    GaussField out = march(tanh_strip(g), 1.0, g, cfg);
    CHECK(max_dev_from_tanh(out) <= 1e-5);
}

TEST_CASE("derived defaults match the documented choices") {
    GridSpec g = axis(401);
    GaussField out = march(tanh_strip(g), 1.0, g);
    CHECK(out.G.grid.n_v == 41);
    CHECK(out.G.grid.v_max == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(out.G.grid.v_min == doctest::Approx(-0.2).epsilon(1e-14));
}

TEST_CASE("cutoff selection from the growth budget") {
    // 401 samples, h=0.005, eps=0.2: asin(10*0.005/0.4)*(401/pi) = 15.99...
    CHECK(detail::auto_cutoff_bin(401, 0.005, 0.2) == 15);
    // wide spacing or a narrow strip disables the filter entirely
    CHECK(detail::auto_cutoff_bin(401, 0.1, 0.2) == 200);
    CHECK(detail::auto_cutoff_bin(101, 0.02, 0.01) == 50);
}

TEST_CASE("degenerate initial line aborts before stepping") {
    GridSpec g = axis(41);
    InitialStrip s = tanh_strip(g);
    s.G0[7] = complex(1.0 - 0.5 * degeneracy_margin, 0.0);
    MarchConfig cfg;
    cfg.epsilon = 0.1;
    cfg.n_v = 5;
    bool caught = false;
    try {
        march(s, 1.0, g, cfg);
    } catch (const degeneracy_error& e) {
        caught = true;
        CHECK(e.i == 7);
    }
    CHECK(caught);
}

TEST_CASE("config validation") {
    GridSpec g = axis(41);
    InitialStrip s = tanh_strip(g);
    MarchConfig even;
    even.epsilon = 0.1;
    even.n_v = 8;
    CHECK_THROWS_AS(march(s, 1.0, g, even), argument_error);

    MarchConfig bad_cut;
    bad_cut.epsilon = 0.1;
    bad_cut.n_v = 5;
    bad_cut.filter_cutoff = 0.0;
    CHECK_THROWS_AS(march(s, 1.0, g, bad_cut), argument_error);

    InitialStrip short_strip = s;
    short_strip.G0.pop_back();
    CHECK_THROWS_AS(march(short_strip, 1.0, g, MarchConfig{}), dimension_error);

    CHECK_THROWS_AS(march(s, 0.0, g, MarchConfig{}), argument_error);

    GridSpec full(-1.0, 1.0, 41, -0.3, 0.3, 5);
    MarchConfig mismatched;
    mismatched.epsilon = 0.1;
    mismatched.n_v = 5;
    CHECK_THROWS_AS(march(s, 1.0, full, mismatched), argument_error);
}

TEST_CASE("reflection with conjugation commutes with the march bit for bit") {
    const std::size_t n = 41;
    GridSpec g = axis(n);
    InitialStrip s;
    s.G0.resize(n);
    s.Gv0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = g.u(i);
        s.G0[i] = 0.4 / std::cosh(u - 0.3) * std::polar(1.0, 0.2 * u) +
                  complex(0.05 * (u + 0.2) * (u + 0.2), 0.0);
        s.Gv0[i] = complex(0.0, 0.1) / std::cosh(u + 0.5) + complex(0.02 * u, 0.0);
    }
    InitialStrip r;
    r.G0.resize(n);
    r.Gv0.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.G0[i] = std::conj(s.G0[n - 1 - i]);
        r.Gv0[i] = std::conj(s.Gv0[n - 1 - i]);
    }

    MarchConfig cfg;
    cfg.epsilon = 0.05;
    cfg.n_v = 5;
    cfg.filter_cutoff = 1.0; // stencil symmetry is exact only without the filter
    GaussField a = march(s, 1.0, g, cfg);
    GaussField b = march(r, 1.0, g, cfg);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < cfg.n_v; ++j)
            CHECK(b.G.at(i, j) == std::conj(a.G.at(n - 1 - i, j)));
}

TEST_CASE("the filter is what keeps high-frequency seeds from exploding") {
    GridSpec g = axis(401);
    // Odd row length makes the alternating seed leak a little into every
    // bin, and the kept band may grow by the full budget e^10, so the seed
    // must sit well under tolerance/e^10.
    InitialStrip noisy = tanh_strip(g);
    for (std::size_t i = 0; i < g.n_u; ++i)
        noisy.G0[i] += complex((i % 2 == 0) ? 1e-10 : -1e-10, 0.0);

    MarchConfig cfg;
    cfg.epsilon = 0.2;
    cfg.n_v = 41;

    GaussField filtered = march(noisy, 1.0, g, cfg);
    CHECK(max_dev_from_tanh(filtered) < 1e-5);

    MarchConfig raw = cfg;
    raw.filter_cutoff = 1.0;
    CHECK_THROWS_AS(march(noisy, 1.0, g, raw), error);
}
