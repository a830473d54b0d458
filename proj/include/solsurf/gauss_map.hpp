#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "calculus.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "vec3.hpp"

namespace solsurf {

// Margin on 1-|G|: inside this band the factor 1-|G|^4 is treated as
// collapsed and operations refuse to divide.
inline constexpr double degeneracy_margin = 1e-6;

// A Gauss map sample field together with the family parameter k.
// k=1 selects translating solitons, k!=1 the singular minimal surfaces.
struct GaussField {
    ComplexField G;
    double k = 1.0;

    GaussField() = default;
    GaussField(ComplexField g, double k_) : G(std::move(g)), k(k_) {
        if (k == 0.0) throw argument_error("GaussField: k must be nonzero");
        if (!all_finite(G)) throw argument_error("GaussField: samples must be finite");
    }
};

// The weighted-area class the surface competes in: weight phi_k and the
// (vertical) gradient of its extension, used by the verification residuals.
struct SolitonClass {
    double k;

    explicit SolitonClass(double k_) : k(k_) {
        if (k == 0.0) throw argument_error("SolitonClass: k must be nonzero");
    }

    double weight(double z) const {
        if (k == 1.0) return z;
        if (!(z > 0.0))
            throw argument_error("SolitonClass: weight is defined for z > 0 when k != 1");
        return (2.0 / (k - 1.0)) * std::log(z);
    }

    // Gradient of the weight at a surface point; only the height matters.
    vec3 weight_gradient(const vec3& p) const {
        if (k == 1.0) return {0.0, 0.0, 1.0};
        if (!(p[2] > 0.0))
            throw argument_error("SolitonClass: weight gradient needs height > 0 when k != 1");
        return {0.0, 0.0, 2.0 / ((k - 1.0) * p[2])};
    }
};

// Unit normal samples over a grid.
struct NormalField {
    GridSpec grid;
    std::vector<vec3> n;

    NormalField() = default;
    explicit NormalField(const GridSpec& g) : grid(g), n(g.size(), vec3{0.0, 0.0, 1.0}) {}

    vec3& at(std::size_t i, std::size_t j) { return n[grid.index(i, j)]; }
    const vec3& at(std::size_t i, std::size_t j) const { return n[grid.index(i, j)]; }
};

namespace detail {

inline void require_nondegenerate(const ComplexField& G, double margin = degeneracy_margin) {
    for (std::size_t i = 0; i < G.grid.n_u; ++i)
        for (std::size_t j = 0; j < G.grid.n_v; ++j)
            if (std::abs(G.at(i, j)) > 1.0 - margin)
                throw degeneracy_error("Gauss map within margin of |G| = 1", i, j);
}

} // namespace detail

// Stereographic image (p1 + i p2)/(1 + p3) of a unit vector, projecting from
// the south pole; inverse of the normal map below.
inline complex stereographic(const vec3& p) {
    return complex(p[0], p[1]) / (1.0 + p[2]);
}

// Unit normal N(sign*G) = ((2G, 1-|G|^2)) / (1+|G|^2), first slot complex.
// The sign calibrates the orientation convention once, project-wide.
inline NormalField normal_from_gauss(const GaussField& gf, int sign = 1) {
    if (sign != 1 && sign != -1)
        throw argument_error("normal_from_gauss: sign must be +1 or -1");
    NormalField out(gf.G.grid);
    for (std::size_t i = 0; i < gf.G.grid.n_u; ++i)
        for (std::size_t j = 0; j < gf.G.grid.n_v; ++j) {
            complex g = double(sign) * gf.G.at(i, j);
            double a2 = std::norm(g);
            double d = 1.0 + a2;
            out.at(i, j) = vec3{2.0 * g.real() / d, 2.0 * g.imag() / d, (1.0 - a2) / d};
        }
    return out;
}

// Left-hand side of the Gauss map equation
//   G_zz' + 2 |G|^2/(1-|G|^4) G' G_z G_z' + 2k |G_z'|^2/(1-|G|^4) G
// (primes denoting conjugation resp. the zbar derivative), evaluated with
// finite differences. The Laplacian part G_zzbar = (G_uu + G_vv)/4 uses
// direct second-difference stencils; composing two one-sided first
// derivatives would cost an order of accuracy at the edges.
inline ComplexField pde_residual(const GaussField& gf) {
    const GridSpec& g = gf.G.grid;
    if (g.n_u < 4 || g.n_v < 4)
        throw dimension_error("pde_residual: grid must be at least 4x4");
    detail::require_nondegenerate(gf.G);

    ComplexField guu = detail::duu(gf.G);
    ComplexField gvv = detail::dvv(gf.G);
    ComplexField gz = d_zeta(gf.G);
    ComplexField gzb = d_zetabar(gf.G);

    ComplexField out(g);
    for (std::size_t p = 0; p < out.values.size(); ++p) {
        complex G = gf.G.values[p];
        double a2 = std::norm(G);
        double denom = 1.0 - a2 * a2;
        complex lap = 0.25 * (guu.values[p] + gvv.values[p]);
        out.values[p] = lap +
                        (2.0 * a2 / denom) * std::conj(G) * gz.values[p] * gzb.values[p] +
                        (2.0 * gf.k * std::norm(gzb.values[p]) / denom) * G;
    }
    return out;
}

// Upsilon = G_zbar / (1 - |G|^4); its conjugate Theta is the weight in the
// representation integrands.
inline ComplexField upsilon(const GaussField& gf) {
    detail::require_nondegenerate(gf.G);
    ComplexField gzb = d_zetabar(gf.G);
    ComplexField out(gf.G.grid);
    for (std::size_t p = 0; p < out.values.size(); ++p) {
        double a2 = std::norm(gf.G.values[p]);
        out.values[p] = gzb.values[p] / (1.0 - a2 * a2);
    }
    return out;
}

inline ComplexField theta(const GaussField& gf) {
    ComplexField out = upsilon(gf);
    for (complex& z : out.values) z = std::conj(z);
    return out;
}

// The three 1-form components whose Re( . dzeta) integrals build the surface:
//   first  = Theta (1 - G^2)      [gamma-weighted when supplied]
//   second = i Theta (1 + G^2)    [gamma-weighted when supplied]
//   third  = 2 Theta G
struct WeierstrassIntegrands {
    ComplexField first, second, third;
};

inline WeierstrassIntegrands rw_integrands(const GaussField& gf,
                                           const RealField* gamma = nullptr) {
    if (gamma && !gamma->grid.same_shape(gf.G.grid))
        throw dimension_error("rw_integrands: gamma grid mismatch");
    ComplexField th = theta(gf);
    WeierstrassIntegrands out{ComplexField(gf.G.grid), ComplexField(gf.G.grid),
                              ComplexField(gf.G.grid)};
    for (std::size_t p = 0; p < th.values.size(); ++p) {
        complex G = gf.G.values[p];
        complex t = th.values[p];
        double w = gamma ? gamma->values[p] : 1.0;
        out.first.values[p] = w * t * (1.0 - G * G);
        out.second.values[p] = w * complex(0.0, 1.0) * t * (1.0 + G * G);
        out.third.values[p] = 2.0 * t * G;
    }
    return out;
}

// Euclidean conformal factor |psi_zeta|^2 of the resulting patch:
// 8 |Upsilon|^2 (1+|G|^2)^2 for k=1 and 8 k^2 Gamma^2 |Upsilon|^2 (1+|G|^2)^2
// otherwise. The k!=1 branch needs the Gamma field of the representation.
inline RealField conformal_factor(const GaussField& gf, const RealField* gamma = nullptr) {
    if (gf.k != 1.0 && !gamma)
        throw argument_error("conformal_factor: k != 1 requires a Gamma field");
    if (gamma && !gamma->grid.same_shape(gf.G.grid))
        throw dimension_error("conformal_factor: gamma grid mismatch");
    ComplexField ups = upsilon(gf);
    RealField out(gf.G.grid);
    for (std::size_t p = 0; p < out.values.size(); ++p) {
        double a2 = std::norm(gf.G.values[p]);
        double base = 8.0 * std::norm(ups.values[p]) * (1.0 + a2) * (1.0 + a2);
        if (gf.k == 1.0) {
            out.values[p] = base;
        } else {
            double gm = gamma->values[p];
            out.values[p] = gf.k * gf.k * gm * gm * base;
        }
    }
    return out;
}

// Max over the three integrand components of |Im(d_zetabar(component))|,
// the obstruction to Re(component dzeta) being closed. Evaluated away from
// a two-sample frame: one-sided first-derivative stencils leave an O(h)
// kink there that composed differentiation would re-amplify, and the two
// outermost rows/columns see it. For k != 1 the first two components carry
// the Gamma weight, rebuilt internally from the potential anchored at the
// grid midpoint; the third (the potential's own integrand) is unweighted.
inline double closedness_residual(const GaussField& gf) {
    const GridSpec& g = gf.G.grid;
    if (g.n_u < 5 || g.n_v < 5)
        throw dimension_error("closedness_residual: grid must be at least 5x5");
    detail::require_nondegenerate(gf.G);

    RealField gamma;
    const RealField* gamma_ptr = nullptr;
    if (gf.k != 1.0) {
        ComplexField tg(g);
        ComplexField th = theta(gf);
        for (std::size_t p = 0; p < tg.values.size(); ++p)
            tg.values[p] = th.values[p] * gf.G.values[p];
        RealField pot = cumulative_real_integral(tg, (g.n_u - 1) / 2, (g.n_v - 1) / 2);
        gamma = RealField(g);
        for (std::size_t p = 0; p < gamma.values.size(); ++p)
            gamma.values[p] = std::exp(4.0 * (gf.k - 1.0) * pot.values[p]);
        gamma_ptr = &gamma;
    }

    WeierstrassIntegrands comps = rw_integrands(gf, gamma_ptr);
    double worst = 0.0;
    for (const ComplexField* c : {&comps.first, &comps.second, &comps.third}) {
        ComplexField dzb = d_zetabar(*c);
        for (std::size_t i = 2; i + 2 < g.n_u; ++i)
            for (std::size_t j = 2; j + 2 < g.n_v; ++j)
                worst = std::max(worst, std::abs(dzb.at(i, j).imag()));
    }
    return worst;
}

} // namespace solsurf
