#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "errors.hpp"
#include "gauss_map.hpp"
#include "vec3.hpp"

namespace solsurf {

// Cauchy data for the construction: a curve beta(u) with a unit normal
// field V(u) along it, and the family parameter k. beta_prime may be left
// empty, in which case it is rebuilt by fourth-order differences of beta
// (uniform samples only); supplying it analytically is better because the
// initial conditions consume it directly.
struct BjorlingData {
    std::vector<double> u;
    std::vector<vec3> beta;
    std::vector<vec3> beta_prime;
    std::vector<vec3> V;
    double k = 1.0;

    std::size_t size() const { return u.size(); }
};

// phi(u) = (beta' - i beta' x V)/2 per sample.
struct PhiData {
    std::vector<std::array<complex, 3>> phi;

    std::size_t size() const { return phi.size(); }
};

// Initial line for the strip solver: G(u,0) and dG/dv(u,0).
struct InitialStrip {
    std::vector<complex> G0;
    std::vector<complex> Gv0;
};

namespace detail {

inline void require_samples_match(const BjorlingData& d) {
    if (d.u.empty()) throw dimension_error("Bjorling data: no samples");
    if (d.beta.size() != d.u.size() || d.V.size() != d.u.size())
        throw dimension_error("Bjorling data: sample arrays differ in length");
    if (!d.beta_prime.empty() && d.beta_prime.size() != d.u.size())
        throw dimension_error("Bjorling data: beta_prime length mismatch");
}

inline double uniform_spacing(const std::vector<double>& u) {
    if (u.size() < 2) throw dimension_error("uniform_spacing: need at least 2 samples");
    double h = u[1] - u[0];
    for (std::size_t i = 1; i + 1 < u.size(); ++i)
        if (std::abs((u[i + 1] - u[i]) - h) > 1e-12 * std::max(1.0, std::abs(h)))
            throw argument_error("finite-difference path needs uniformly spaced u-samples");
    return h;
}

inline std::vector<complex> deriv1_real_packed(const std::vector<double>& x, double h) {
    std::vector<complex> f(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) f[i] = complex(x[i], 0.0);
    return deriv1(f, h, 4);
}

} // namespace detail

// Fourth-order differences of beta when beta_prime was not supplied.
inline std::vector<vec3> resolved_beta_prime(const BjorlingData& d) {
    detail::require_samples_match(d);
    if (!d.beta_prime.empty()) return d.beta_prime;
    if (d.size() < 5)
        throw dimension_error("resolved_beta_prime: differencing needs at least 5 samples");
    double h = detail::uniform_spacing(d.u);
    std::vector<std::vector<complex>> comp(3);
    for (int c = 0; c < 3; ++c) {
        std::vector<double> x(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) x[i] = d.beta[i][c];
        comp[c] = detail::deriv1_real_packed(x, h);
    }
    std::vector<vec3> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        out[i] = vec3{comp[0][i].real(), comp[1][i].real(), comp[2][i].real()};
    return out;
}

// Checks the data conditions in a fixed order and reports the first
// violated one with the sample where it happened.
inline void validate(const BjorlingData& d) {
    detail::require_samples_match(d);
    if (d.k == 0.0)
        throw validation_error(violation::k_is_zero, 0, "k = 0 is outside the family");
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (!(d.u[i + 1] > d.u[i]))
            throw validation_error(violation::non_increasing_samples, i + 1,
                                   "u-samples must increase strictly");

    std::vector<vec3> bp = resolved_beta_prime(d);
    const double tol = 1e-10;

    for (std::size_t i = 0; i < d.size(); ++i)
        if (std::abs(norm(d.V[i]) - 1.0) > tol)
            throw validation_error(violation::non_unit_normal, i,
                                   "V must be unit length (sample " + std::to_string(i) + ")");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (std::abs(dot(bp[i], d.V[i])) > tol)
            throw validation_error(violation::non_orthogonal_normal, i,
                                   "V must be orthogonal to beta' (sample " + std::to_string(i) + ")");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!(d.V[i][2] > 0.0))
            throw validation_error(violation::normal_points_down, i,
                                   "V3 must be positive (sample " + std::to_string(i) + ")");
    if (d.k != 1.0)
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!(d.beta[i][2] > 0.0))
                throw validation_error(violation::curve_not_above_plane, i,
                                       "beta3 must be positive when k != 1 (sample " +
                                           std::to_string(i) + ")");
    for (std::size_t i = 0; i < d.size(); ++i)
        if (norm(bp[i]) < 1e-10)
            throw validation_error(violation::degenerate_velocity, i,
                                   "beta' vanishes (sample " + std::to_string(i) + ")");
}

// phi = (beta' - i beta' x V)/2; the null condition
// phi1^2 + phi2^2 + phi3^2 = 0 follows from |V| = 1 and <beta',V> = 0.
inline PhiData phi_of(const BjorlingData& d) {
    validate(d);
    std::vector<vec3> bp = resolved_beta_prime(d);
    PhiData out;
    out.phi.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        vec3 c = cross(bp[i], d.V[i]);
        for (int a = 0; a < 3; ++a)
            out.phi[i][a] = 0.5 * complex(bp[i][a], -c[a]);
    }
    return out;
}

// G(u,0) from phi, picking whichever of the two equivalent expressions
//   phi3/(phi1 - i phi2)   and   -(phi1 + i phi2)/phi3
// carries the larger denominator; they agree by the null condition.
inline std::vector<complex> initial_gauss(const PhiData& p) {
    std::vector<complex> G(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        complex den1 = p.phi[i][0] - complex(0.0, 1.0) * p.phi[i][1];
        complex den2 = p.phi[i][2];
        if (std::abs(den1) < 1e-14 && std::abs(den2) < 1e-14)
            throw argument_error("initial_gauss: both denominators vanish at sample " +
                                 std::to_string(i));
        if (std::abs(den1) >= std::abs(den2))
            G[i] = p.phi[i][2] / den1;
        else
            G[i] = -(p.phi[i][0] + complex(0.0, 1.0) * p.phi[i][1]) / den2;
        if (!(std::abs(G[i]) < 1.0))
            throw degeneracy_error("initial_gauss: |G| reached 1", i, 0);
    }
    return G;
}

// dG/dv on the data line. The zbar derivative there is
//   (1-|G|^4)/4 * (conj(phi1) + i conj(phi2))             for k = 1,
//   (1-|G|^4)/(2(k-1) beta3) * (conj(phi1) + i conj(phi2)) otherwise,
// and G_v = -i (2 G_zbar - G_u) with G_u differenced from G0 at fourth
// order. Second-order differencing here is not enough: its O(h^2) boundary
// spikes sit in the high-frequency band that the strip evolution amplifies
// fastest, and they dominate the marched field before the filter can help.
inline std::vector<complex> initial_vderivative(const PhiData& p,
                                                const std::vector<complex>& G0,
                                                const BjorlingData& d) {
    if (p.size() != G0.size() || p.size() != d.size())
        throw dimension_error("initial_vderivative: sample count mismatch");
    if (d.k == 0.0) throw argument_error("initial_vderivative: k must be nonzero");
    if (p.size() < 5)
        throw dimension_error("initial_vderivative: need at least 5 samples");

    double h = detail::uniform_spacing(d.u);
    std::vector<complex> Gu = detail::deriv1(G0, h, 4);

    std::vector<complex> Gv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        double a2 = std::norm(G0[i]);
        if (std::abs(G0[i]) > 1.0 - degeneracy_margin)
            throw degeneracy_error("initial_vderivative: |G| within margin of 1", i, 0);
        complex q = std::conj(p.phi[i][0]) + complex(0.0, 1.0) * std::conj(p.phi[i][1]);
        double factor;
        if (d.k == 1.0)
            factor = (1.0 - a2 * a2) / 4.0;
        else
            factor = (1.0 - a2 * a2) / (2.0 * (d.k - 1.0) * d.beta[i][2]);
        complex gzb = factor * q;
        Gv[i] = complex(0.0, -1.0) * (2.0 * gzb - Gu[i]);
    }
    return Gv;
}

// The full data-to-initial-line composition.
inline InitialStrip initial_strip(const BjorlingData& d) {
    PhiData p = phi_of(d);
    InitialStrip out;
    out.G0 = initial_gauss(p);
    out.Gv0 = initial_vderivative(p, out.G0, d);
    return out;
}

} // namespace solsurf
