#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bjorling.hpp"
#include "calculus.hpp"
#include "errors.hpp"
#include "gauss_map.hpp"
#include "grid.hpp"

namespace solsurf {

// Controls for the strip solver. Zero epsilon or n_v means "derive":
// epsilon = (u_max - u_min)/10 and n_v chosen so the v-spacing is about
// twice the u-spacing. filter_cutoff, when set, retains that fraction of
// the resolvable u-frequencies after every step; when unset the cutoff is
// picked from the growth budget below.
struct MarchConfig {
    double epsilon = 0.0;
    std::size_t n_v = 0;
    std::optional<double> filter_cutoff;
    double max_G = 1.0 - degeneracy_margin;
};

namespace detail {

// Marching away from the data line solves an elliptic Cauchy problem: a
// u-mode of frequency xi grows like cosh(s v) with s = (2/h) sin(xi h / 2),
// no matter how good the scheme is. The filter keeps only modes whose
// total growth over the strip stays under e^budget; budget 10 measured
// best here (13 inflates the observed convergence order with coarse-grid
// noise, 16 and beyond lose the round trip entirely).
inline constexpr double growth_budget = 10.0;

inline std::size_t auto_cutoff_bin(std::size_t n, double h_u, double eps) {
    double arg = growth_budget * h_u / (2.0 * eps);
    if (arg >= 1.0) return n / 2;
    return std::size_t(std::floor(double(n) / M_PI * std::asin(arg)));
}

// Replaces next by prev + lowpass(next - prev), keeping DFT bins with
// |frequency index| <= nbin. Filtering the increment instead of the row
// leaves non-periodic carriers (tanh and friends) free of Gibbs ringing;
// the increments themselves are near-periodic small corrections.
inline std::vector<complex> lowpass_increment(const std::vector<complex>& prev,
                                              const std::vector<complex>& next,
                                              std::size_t nbin) {
    const std::size_t n = prev.size();
    if (2 * nbin + 1 >= n) return next;

    std::vector<complex> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = next[i] - prev[i];

    std::vector<complex> roots(n);
    for (std::size_t r = 0; r < n; ++r)
        roots[r] = std::polar(1.0, 2.0 * M_PI * double(r) / double(n));

    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k <= nbin; ++k) kept.push_back(k);
    for (std::size_t k = n - nbin; k < n; ++k) kept.push_back(k);

    std::vector<complex> bins(kept.size());
    for (std::size_t b = 0; b < kept.size(); ++b) {
        complex acc(0.0, 0.0);
        std::size_t k = kept[b];
        for (std::size_t i = 0; i < n; ++i)
            acc += d[i] * std::conj(roots[(k * i) % n]);
        bins[b] = acc;
    }

    std::vector<complex> out(n);
    const double scale = 1.0 / double(n);
    for (std::size_t i = 0; i < n; ++i) {
        complex acc(0.0, 0.0);
        for (std::size_t b = 0; b < kept.size(); ++b)
            acc += bins[b] * roots[(kept[b] * i) % n];
        out[i] = prev[i] + acc * scale;
    }
    return out;
}

} // namespace detail

// Extends G from the line v=0 into the strip |v| <= epsilon by integrating
//   G_vv = -G_uu - 8 ( |G|^2 conj(G) P + k Q G ) / (1 - |G|^4),
//   P = (G_u^2 + G_v^2)/4,  Q = |G_u + i G_v|^2 / 4,
// as a first-order system in (G, G_v), fourth-order differences in u, RK4
// in v, symmetrically in both directions from the data line. The grid
// argument fixes the u-axis; its v-extent, if more than one row, must agree
// with the config.
inline GaussField march(const InitialStrip& init, double k, const GridSpec& grid,
                        MarchConfig cfg = {}) {
    const std::size_t n = grid.n_u;
    if (init.G0.size() != n || init.Gv0.size() != n)
        throw dimension_error("march: initial line length does not match the grid");
    if (n < 7) throw dimension_error("march: need at least 7 u-samples");
    if (k == 0.0) throw argument_error("march: k must be nonzero");

    const double h_u = grid.h_u();
    if (cfg.epsilon == 0.0) cfg.epsilon = 0.1 * (grid.u_max - grid.u_min);
    if (!(cfg.epsilon > 0.0)) throw argument_error("march: epsilon must be positive");
    if (cfg.n_v == 0)
        cfg.n_v = 2 * std::size_t(std::lround(cfg.epsilon / (2.0 * h_u))) + 1;
    if (cfg.n_v < 3 || cfg.n_v % 2 == 0)
        throw argument_error("march: n_v must be odd and at least 3");
    if (cfg.filter_cutoff && !(*cfg.filter_cutoff > 0.0 && *cfg.filter_cutoff <= 1.0))
        throw argument_error("march: filter_cutoff must lie in (0,1]");
    if (grid.n_v > 1) {
        bool matches = grid.n_v == cfg.n_v &&
                       std::abs(grid.v_min + cfg.epsilon) < 1e-12 &&
                       std::abs(grid.v_max - cfg.epsilon) < 1e-12;
        if (!matches)
            throw argument_error("march: grid v-extent disagrees with the config");
    }

    GridSpec out_grid(grid.u_min, grid.u_max, n, -cfg.epsilon, cfg.epsilon, cfg.n_v);
    const double h_v = out_grid.h_v();
    const std::size_t j_mid = (cfg.n_v - 1) / 2;

    std::size_t nbin = cfg.filter_cutoff
                           ? std::size_t(std::floor(*cfg.filter_cutoff * double(n) / 2.0))
                           : detail::auto_cutoff_bin(n, h_u, cfg.epsilon);
    const bool filtering = 2 * nbin + 1 < n;

    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(init.G0[i]) > cfg.max_G)
            throw degeneracy_error("march: initial line already at the |G| margin", i, j_mid);

    auto rhs = [&](const MarchState& s) {
        const std::vector<complex>& G = s[0];
        const std::vector<complex>& Gv = s[1];
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(G[i]) > cfg.max_G)
                throw degeneracy_error("march: |G| reached the margin", i, 0);
        std::vector<complex> Gu = detail::deriv1(G, h_u, 4);
        std::vector<complex> Guu = detail::deriv2(G, h_u, 4);
        MarchState d(2, std::vector<complex>(n));
        d[0] = Gv;
        for (std::size_t i = 0; i < n; ++i) {
            double a2 = std::norm(G[i]);
            double denom = 1.0 - a2 * a2;
            complex P = 0.25 * (Gu[i] * Gu[i] + Gv[i] * Gv[i]);
            double Q = 0.25 * std::norm(Gu[i] + complex(0.0, 1.0) * Gv[i]);
            d[1][i] = -Guu[i] - 8.0 * (a2 * std::conj(G[i]) * P + k * Q * G[i]) / denom;
        }
        return d;
    };

    ComplexField G_out(out_grid);
    for (std::size_t i = 0; i < n; ++i) G_out.at(i, j_mid) = init.G0[i];

    auto sweep = [&](double direction) {
        MarchState state{init.G0, init.Gv0};
        for (std::size_t step = 1; step + j_mid < cfg.n_v; ++step) {
            std::size_t j = direction > 0 ? j_mid + step : j_mid - step;
            MarchState next;
            try {
                next = rk4_march(state, rhs, direction * h_v);
            } catch (const degeneracy_error& e) {
                throw degeneracy_error("march: |G| reached the margin at v-step " +
                                           std::to_string(j),
                                       e.i, j);
            } catch (const blowup_error& e) {
                throw blowup_error("march: blow-up at v-step " + std::to_string(j), e.j, j);
            }
            if (filtering) {
                next[0] = detail::lowpass_increment(state[0], next[0], nbin);
                next[1] = detail::lowpass_increment(state[1], next[1], nbin);
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::isfinite(next[0][i].real()) || !std::isfinite(next[0][i].imag()))
                    throw blowup_error("march: blow-up at v-step " + std::to_string(j), i, j);
                if (std::abs(next[0][i]) > cfg.max_G)
                    throw degeneracy_error("march: |G| reached the margin at v-step " +
                                               std::to_string(j),
                                           i, j);
            }
            for (std::size_t i = 0; i < n; ++i) G_out.at(i, j) = next[0][i];
            state = std::move(next);
        }
    };
    sweep(+1.0);
    sweep(-1.0);

    return GaussField(std::move(G_out), k);
}

} // namespace solsurf
