#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bjorling.hpp"
#include "errors.hpp"
#include "gauss_map.hpp"
#include "grid.hpp"
#include "vec3.hpp"
#include "weierstrass.hpp"

namespace solsurf {

// Profile state for the cylindrical family: m and its accumulated
// quadrature I_value, both anchored at the middle u-sample.
struct CaseAState {
    double m = 0.0;
    double I_value = 0.0;
};

// Profile state for the rotational family: m, the exponent phi_exp of its
// ODE, the quadrature J of m^2/(1-m^4), and the derived positive factor
// gamma_val = ((1+m^2)/(1-m^2))^{(k-1)/4} e^{(1-k)J}.
struct CaseBState {
    double m = 0.0;
    double phi_exp = 0.0;
    double J = 0.0;
    double gamma_val = 1.0;
};

namespace detail {

inline constexpr double profile_margin = 1e-9;

template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_profile(const GridSpec& grid,
                                                     std::array<double, N> y0, Rhs&& rhs) {
    const std::size_t n = grid.n_u;
    const double h = grid.h_u();
    const std::size_t i0 = (n - 1) / 2;
    std::vector<std::array<double, N>> out(n);
    out[i0] = y0;

    auto step = [&rhs](const std::array<double, N>& y, double hh) {
        auto combine = [](const std::array<double, N>& a, double s,
                          const std::array<double, N>& b) {
            std::array<double, N> r;
            for (std::size_t c = 0; c < N; ++c) r[c] = a[c] + s * b[c];
            return r;
        };
        std::array<double, N> k1 = rhs(y);
        std::array<double, N> k2 = rhs(combine(y, 0.5 * hh, k1));
        std::array<double, N> k3 = rhs(combine(y, 0.5 * hh, k2));
        std::array<double, N> k4 = rhs(combine(y, hh, k3));
        std::array<double, N> r;
        for (std::size_t c = 0; c < N; ++c)
            r[c] = y[c] + hh / 6.0 * (k1[c] + 2.0 * (k2[c] + k3[c]) + k4[c]);
        return r;
    };
    auto checked = [&grid](const std::array<double, N>& y, std::size_t i) {
        for (double c : y)
            if (!std::isfinite(c))
                throw domain_exit_error("profile left its domain near u = " +
                                            std::to_string(grid.u(i)),
                                        grid.u(i));
        if (std::abs(y[0]) >= 1.0 - profile_margin)
            throw domain_exit_error("profile reached |m| = 1 near u = " +
                                        std::to_string(grid.u(i)),
                                    grid.u(i));
    };

    for (std::size_t i = i0; i + 1 < n; ++i) {
        out[i + 1] = step(out[i], h);
        checked(out[i + 1], i + 1);
    }
    for (std::size_t i = i0; i > 0; --i) {
        out[i - 1] = step(out[i], -h);
        checked(out[i - 1], i - 1);
    }
    return out;
}

inline void require_profile_seed(double k, double m0) {
    if (k == 0.0) throw argument_error("profile: k must be nonzero");
    if (!(std::abs(m0) < 1.0)) throw argument_error("profile: m0 must lie inside (-1,1)");
}

} // namespace detail

// Cylindrical-family profile: m' (1+m^2)^{(k-1)/2} = (1-m^2)^{(k+1)/2} with
// the quadrature I' = (1-m^2)/(1+m^2), m(u*) = m0 and I(u*) = 0 at the
// middle sample. For k=1 this is m = tanh shifted to hit m0.
inline std::vector<CaseAState> case_a_profile(double k, const GridSpec& grid, double m0 = 0.0) {
    detail::require_profile_seed(k, m0);
    auto rhs = [k](const std::array<double, 2>& y) {
        double m = y[0];
        double mp = std::pow(1.0 - m * m, 0.5 * (k + 1.0)) *
                    std::pow(1.0 + m * m, -0.5 * (k - 1.0));
        return std::array<double, 2>{mp, (1.0 - m * m) / (1.0 + m * m)};
    };
    auto raw = detail::integrate_profile<2>(grid, {m0, 0.0}, rhs);
    std::vector<CaseAState> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = CaseAState{raw[i][0], raw[i][1]};
    return out;
}

// Rotational-family profile:
//   m' = m - sqrt(1-m^4) ((1-m^2)/(1+m^2))^{k/2} e^{-phi},
//   phi' = (m^4 + 1 - 2k m^2)/(1-m^4),   J' = m^2/(1-m^4),
// anchored m(u*) = m0, phi(u*) = J(u*) = 0.
inline std::vector<CaseBState> case_b_profile(double k, const GridSpec& grid, double m0 = 0.0) {
    detail::require_profile_seed(k, m0);
    auto rhs = [k](const std::array<double, 3>& y) {
        double m = y[0], phi = y[1];
        double m2 = m * m;
        double mp = m - std::sqrt(1.0 - m2 * m2) *
                            std::pow((1.0 - m2) / (1.0 + m2), 0.5 * k) * std::exp(-phi);
        return std::array<double, 3>{mp, (m2 * m2 + 1.0 - 2.0 * k * m2) / (1.0 - m2 * m2),
                                     m2 / (1.0 - m2 * m2)};
    };
    auto raw = detail::integrate_profile<3>(grid, {m0, 0.0, 0.0}, rhs);
    std::vector<CaseBState> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double m2 = raw[i][0] * raw[i][0];
        double gamma = std::pow((1.0 + m2) / (1.0 - m2), 0.25 * (k - 1.0)) *
                       std::exp((1.0 - k) * raw[i][2]);
        out[i] = CaseBState{raw[i][0], raw[i][1], raw[i][2], gamma};
    }
    return out;
}

// The translating-soliton cylinder over the grim reaper curve:
// (2 arctan tanh u, 2v, log cosh 2u).
inline SurfacePatch grim_reaper_patch(const GridSpec& grid) {
    SurfacePatch out(grid, 1.0);
    out.anchor_i = (grid.n_u - 1) / 2;
    out.anchor_j = (grid.n_v - 1) / 2;
    for (std::size_t i = 0; i < grid.n_u; ++i) {
        double u = grid.u(i);
        double x = 2.0 * std::atan(std::tanh(u));
        double c = std::cosh(u), s = std::sinh(u);
        double z = std::log(c * c + s * s);
        for (std::size_t j = 0; j < grid.n_v; ++j)
            out.at(i, j) = vec3{x, 2.0 * grid.v(j), z};
    }
    return out;
}

// Case-A singular minimal surface (k outside {0,1}):
// (2k I(u), 2k v, (2k/(k-1)) ((1+m^2)/(1-m^2))^{(k-1)/2}).
inline SurfacePatch catenary_cylinder_patch(double k, const GridSpec& grid, double m0 = 0.0) {
    if (k == 1.0) throw argument_error("catenary_cylinder_patch: k = 1 is the grim reaper");
    std::vector<CaseAState> prof = case_a_profile(k, grid, m0);
    SurfacePatch out(grid, k);
    out.anchor_i = (grid.n_u - 1) / 2;
    out.anchor_j = (grid.n_v - 1) / 2;
    const double zscale = 2.0 * k / (k - 1.0);
    for (std::size_t i = 0; i < grid.n_u; ++i) {
        double m2 = prof[i].m * prof[i].m;
        double z = zscale * std::pow((1.0 + m2) / (1.0 - m2), 0.5 * (k - 1.0));
        if (!std::isfinite(z))
            throw blowup_error("catenary_cylinder_patch: height overflowed", i, 0);
        for (std::size_t j = 0; j < grid.n_v; ++j)
            out.at(i, j) = vec3{2.0 * k * prof[i].I_value, 2.0 * k * grid.v(j), z};
    }
    return out;
}

// Case-B rotational surface. With E = ((1-m^2)/(1+m^2))^{(k-1)/2} e^{-phi}:
// k=1:   (2E cos v, 2E sin v, log((1+m^2)/(1-m^2)) - 4J)
// k!=1:  (2k Gamma E cos v, 2k Gamma E sin v, (2k/(k-1)) Gamma),
// where Gamma = gamma_val^2.
inline SurfacePatch rotational_patch(double k, const GridSpec& grid, double m0 = 0.0) {
    std::vector<CaseBState> prof = case_b_profile(k, grid, m0);
    SurfacePatch out(grid, k);
    out.anchor_i = (grid.n_u - 1) / 2;
    out.anchor_j = (grid.n_v - 1) / 2;
    for (std::size_t i = 0; i < grid.n_u; ++i) {
        double m2 = prof[i].m * prof[i].m;
        double E = std::pow((1.0 - m2) / (1.0 + m2), 0.5 * (k - 1.0)) * std::exp(-prof[i].phi_exp);
        double radial, height;
        if (k == 1.0) {
            radial = 2.0 * E;
            height = std::log((1.0 + m2) / (1.0 - m2)) - 4.0 * prof[i].J;
        } else {
            double gamma = prof[i].gamma_val * prof[i].gamma_val;
            radial = 2.0 * k * gamma * E;
            height = 2.0 * k / (k - 1.0) * gamma;
        }
        if (!std::isfinite(radial) || !std::isfinite(height))
            throw blowup_error("rotational_patch: profile factor overflowed", i, 0);
        for (std::size_t j = 0; j < grid.n_v; ++j) {
            double v = grid.v(j);
            out.at(i, j) = vec3{radial * std::cos(v), radial * std::sin(v), height};
        }
    }
    return out;
}

// Gauss maps of the two families, for feeding the analytic machinery:
// G(u,v) = m(u) for Case A, G(u,v) = m(u) e^{iv} for Case B.
inline GaussField case_a_gauss_field(double k, const GridSpec& grid, double m0 = 0.0) {
    std::vector<CaseAState> prof = case_a_profile(k, grid, m0);
    ComplexField G(grid);
    for (std::size_t i = 0; i < grid.n_u; ++i)
        for (std::size_t j = 0; j < grid.n_v; ++j)
            G.at(i, j) = complex(prof[i].m, 0.0);
    return GaussField(std::move(G), k);
}

inline GaussField case_b_gauss_field(double k, const GridSpec& grid, double m0 = 0.0) {
    std::vector<CaseBState> prof = case_b_profile(k, grid, m0);
    ComplexField G(grid);
    for (std::size_t i = 0; i < grid.n_u; ++i)
        for (std::size_t j = 0; j < grid.n_v; ++j)
            G.at(i, j) = std::polar(prof[i].m, grid.v(j));
    return GaussField(std::move(G), k);
}

// Bjorling data read off the grim reaper cylinder along v = 0.
inline BjorlingData grim_reaper_bjorling(double u_min, double u_max, std::size_t n) {
    GridSpec axis(u_min, u_max, n, 0.0, 0.0, 1);
    BjorlingData d;
    d.k = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double u = axis.u(i);
        double m = std::tanh(u);
        double w = 1.0 + m * m;
        double c = std::cosh(u), s = std::sinh(u);
        d.u.push_back(u);
        d.beta.push_back(vec3{2.0 * std::atan(m), 0.0, std::log(c * c + s * s)});
        d.beta_prime.push_back(vec3{2.0 * (1.0 - m * m) / w, 0.0, 4.0 * m / w});
        d.V.push_back(vec3{-2.0 * m / w, 0.0, (1.0 - m * m) / w});
    }
    return d;
}

} // namespace solsurf
