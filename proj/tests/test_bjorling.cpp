#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "solsurf/bjorling.hpp"

using namespace solsurf;

namespace {

BjorlingData line_data(double k, double beta3 = 1.0, std::size_t n = 9) {
    BjorlingData d;
    d.k = k;
    for (std::size_t i = 0; i < n; ++i) {
        double u = -1.0 + 2.0 * double(i) / double(n - 1);
        d.u.push_back(u);
        d.beta.push_back(vec3{u, 0.0, beta3});
        d.beta_prime.push_back(vec3{1.0, 0.0, 0.0});
        d.V.push_back(vec3{0.0, 0.0, 1.0});
    }
    return d;
}

struct SplitMix {
    unsigned long long s;
    double operator()() {
        s += 0x9e3779b97f4a7c15ull;
        unsigned long long z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return double(z % 2000001ull) / 1000000.0 - 1.0;
    }
};

BjorlingData random_valid_data(SplitMix& rng, double k, std::size_t n = 7) {
    BjorlingData d;
    d.k = k;
    for (std::size_t i = 0; i < n; ++i) {
        vec3 V;
        do {
            V = vec3{rng(), rng(), std::abs(rng()) + 0.05};
        } while (norm(V) < 0.1);
        V = (1.0 / norm(V)) * V;
        vec3 w{rng(), rng(), rng()};
        vec3 bp = w - dot(w, V) * V;
        while (norm(bp) < 0.1) {
            w = vec3{rng(), rng(), rng()};
            bp = w - dot(w, V) * V;
        }
        d.u.push_back(double(i));
        d.beta.push_back(vec3{rng(), rng(), std::abs(rng()) + 0.5});
        d.beta_prime.push_back(bp);
        d.V.push_back(V);
    }
    return d;
}

} // namespace

TEST_CASE("validation accepts the worked line datasets") {
    CHECK_NOTHROW(validate(line_data(3.0)));
    CHECK_NOTHROW(validate(line_data(1.0)));
    // k=1 does not restrict the height of the curve
    CHECK_NOTHROW(validate(line_data(1.0, -1.0)));
}

TEST_CASE("validation names the first violated condition") {
    BjorlingData d = line_data(1.0);
    double r = 1.0 / std::sqrt(2.0);
    for (auto& V : d.V) V = vec3{0.0, 2.0 * r, 2.0 * r};
    try {
        validate(d);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::non_unit_normal);
        CHECK(e.sample == 0);
    }

    BjorlingData below = line_data(3.0, -1.0);
    try {
        validate(below);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::curve_not_above_plane);
    }

    BjorlingData tilted = line_data(1.0);
    tilted.V[4] = vec3{0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    tilted.beta_prime[4] = vec3{0.0, 1.0, 0.0};
    try {
        validate(tilted);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::non_orthogonal_normal);
        CHECK(e.sample == 4);
    }

    BjorlingData sideways = line_data(1.0);
    for (auto& V : sideways.V) V = vec3{0.0, 1.0, 0.0};
    try {
        validate(sideways);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::normal_points_down);
    }

    BjorlingData zero_k = line_data(0.0);
    try {
        validate(zero_k);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::k_is_zero);
    }

    BjorlingData stalled = line_data(1.0);
    stalled.beta_prime[2] = vec3{0.0, 0.0, 0.0};
    try {
        validate(stalled);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::degenerate_velocity);
        CHECK(e.sample == 2);
    }

    BjorlingData shuffled = line_data(1.0);
    std::swap(shuffled.u[3], shuffled.u[4]);
    try {
        validate(shuffled);
        FAIL("expected a validation error");
    } catch (const validation_error& e) {
        CHECK(e.which == violation::non_increasing_samples);
    }
}

TEST_CASE("validation allows non-uniform samples when beta_prime is given") {
    BjorlingData d;
    d.k = 1.0;
    for (double u : {0.0, 0.1, 0.25, 0.5, 1.0}) {
        d.u.push_back(u);
        d.beta.push_back(vec3{u, 0.0, 1.0});
        d.beta_prime.push_back(vec3{1.0, 0.0, 0.0});
        d.V.push_back(vec3{0.0, 0.0, 1.0});
    }
    CHECK_NOTHROW(validate(d));
}

TEST_CASE("beta_prime rebuilt by differencing matches the analytic rate") {
    BjorlingData d;
    d.k = 1.0;
    const std::size_t n = 21;
    for (std::size_t i = 0; i < n; ++i) {
        double u = double(i) * 0.1;
        d.u.push_back(u);
        d.beta.push_back(vec3{std::sin(u), std::cos(u), 2.0 + u});
        d.V.push_back(vec3{0.0, 0.0, 1.0});
    }
    std::vector<vec3> bp = resolved_beta_prime(d);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double u = double(i) * 0.1;
        worst = std::max(worst, norm(bp[i] - vec3{std::cos(u), -std::sin(u), 1.0}));
    }
    // the boundary closures carry the largest truncation term, about h^4/5
    CHECK(worst < 5e-5);

    BjorlingData skewed = d;
    skewed.u[3] += 0.03;
    skewed.u[4] -= 0.02;
    CHECK_THROWS_AS(resolved_beta_prime(skewed), argument_error);
}

TEST_CASE("phi of the flat and tilted lines") {
    PhiData p = phi_of(line_data(1.0));
    CHECK(p.phi[0][0] == complex(0.5, 0.0));
    CHECK(p.phi[0][1] == complex(0.0, 0.5));
    CHECK(p.phi[0][2] == complex(0.0, 0.0));

    BjorlingData d = line_data(1.0);
    for (auto& V : d.V) V = vec3{0.0, 0.8, 0.6};
    PhiData q = phi_of(d);
    CHECK(std::abs(q.phi[0][0] - complex(0.5, 0.0)) == 0.0);
    CHECK(std::abs(q.phi[0][1] - complex(0.0, 0.3)) < 1e-16);
    CHECK(std::abs(q.phi[0][2] - complex(0.0, -0.4)) < 1e-16);
}

TEST_CASE("phi satisfies the null condition on random data") {
    SplitMix rng{7u};
    for (int trial = 0; trial < 100; ++trial) {
        double k = (trial % 3 == 0) ? 1.0 : ((trial % 3 == 1) ? 3.0 : -1.0);
        BjorlingData d = random_valid_data(rng, k);
        PhiData p = phi_of(d);
        for (const auto& phi : p.phi) {
            complex null = phi[0] * phi[0] + phi[1] * phi[1] + phi[2] * phi[2];
            CHECK(std::abs(null) <= 1e-10);
        }
    }
}

TEST_CASE("initial gauss map reproduces the worked value exactly") {
    BjorlingData d = line_data(1.0);
    for (auto& V : d.V) V = vec3{0.0, 0.8, 0.6};
    std::vector<complex> G = initial_gauss(phi_of(d));
    for (const complex& g : G) {
        CHECK(g == complex(0.0, -0.5));
        CHECK(std::abs(std::norm(g) - 0.25) <= 1e-12);
    }

    // vertical normal picks the nonvanishing first formula and gives G = 0
    std::vector<complex> G0 = initial_gauss(phi_of(line_data(1.0)));
    for (const complex& g : G0) CHECK(g == complex(0.0, 0.0));
}

TEST_CASE("initial gauss modulus follows the stereographic identity") {
    SplitMix rng{23u};
    for (int trial = 0; trial < 25; ++trial) {
        BjorlingData d = random_valid_data(rng, 1.0);
        std::vector<complex> G = initial_gauss(phi_of(d));
        for (std::size_t i = 0; i < d.size(); ++i) {
            double expected = std::sqrt((1.0 - d.V[i][2]) / (1.0 + d.V[i][2]));
            CHECK(std::abs(std::abs(G[i]) - expected) <= 1e-10);
            CHECK(std::abs(G[i] + stereographic(d.V[i])) <= 1e-12);
        }
    }
}

TEST_CASE("rotating the data rotates the initial gauss map rigidly") {
    SplitMix rng{99u};
    BjorlingData d = random_valid_data(rng, 1.0);
    BjorlingData r = d;
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto rot = [](const vec3& p) { return vec3{-p[1], p[0], p[2]}; };
        r.beta[i] = rot(d.beta[i]);
        r.beta_prime[i] = rot(d.beta_prime[i]);
        r.V[i] = rot(d.V[i]);
    }
    std::vector<complex> G = initial_gauss(phi_of(d));
    std::vector<complex> Gr = initial_gauss(phi_of(r));
    const complex eye(0.0, 1.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(std::abs(std::abs(Gr[i]) - std::abs(G[i])) <= 1e-12);
        CHECK(std::abs(Gr[i] - eye * G[i]) <= 1e-12);
    }
}

TEST_CASE("both initial gauss formulas agree off their singular sets") {
    SplitMix rng{51u};
    for (int trial = 0; trial < 25; ++trial) {
        BjorlingData d = random_valid_data(rng, 3.0);
        PhiData p = phi_of(d);
        for (std::size_t i = 0; i < p.size(); ++i) {
            complex den1 = p.phi[i][0] - complex(0.0, 1.0) * p.phi[i][1];
            complex den2 = p.phi[i][2];
            if (std::abs(den1) < 1e-6 || std::abs(den2) < 1e-6) continue;
            complex a = p.phi[i][2] / den1;
            complex b = -(p.phi[i][0] + complex(0.0, 1.0) * p.phi[i][1]) / den2;
            CHECK(std::abs(a - b) <= 1e-10);
        }
    }
}

TEST_CASE("initial v-derivative on the flat line") {
    BjorlingData d1 = line_data(1.0);
    InitialStrip s1 = initial_strip(d1);
    for (const complex& gv : s1.Gv0) CHECK(gv == complex(0.0, -0.5));

    BjorlingData d3 = line_data(3.0);
    InitialStrip s3 = initial_strip(d3);
    // (1-|G|^4)/(2(k-1) beta3) = 1/4 here as well
    for (const complex& gv : s3.Gv0) CHECK(gv == complex(0.0, -0.5));
}

TEST_CASE("zero conjugate branch ties the v-derivative to the u-derivative") {
    const std::size_t n = 11;
    BjorlingData d = line_data(1.0, 1.0, n);
    PhiData p;
    p.phi.resize(n);
    std::vector<complex> G0(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.phi[i] = {complex(0.0, 0.3), complex(0.3, 0.0), complex(0.0, 0.0)};
        G0[i] = complex(0.1 * std::sin(d.u[i]), 0.0);
    }
    std::vector<complex> Gv = initial_vderivative(p, G0, d);
    double h = d.u[1] - d.u[0];
    std::vector<complex> Gu = detail::deriv1(G0, h, 4);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(Gv[i] == complex(-Gu[i].imag(), Gu[i].real()));
}

TEST_CASE("initial strip guards") {
    BjorlingData d = line_data(1.0, 1.0, 4);
    CHECK_THROWS_AS(initial_strip(d), dimension_error);

    BjorlingData mism = line_data(1.0);
    PhiData p = phi_of(mism);
    std::vector<complex> short_G(3);
    CHECK_THROWS_AS(initial_vderivative(p, short_G, mism), dimension_error);
}
