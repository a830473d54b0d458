#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "bjorling.hpp"
#include "calculus.hpp"
#include "errors.hpp"
#include "gauss_map.hpp"
#include "grid.hpp"
#include "vec3.hpp"

namespace solsurf {

// A surface built over a parameter grid. The anchor marks where the
// integration constants were pinned; immersed is false when Upsilon
// vanishes identically and the "surface" collapsed to a point.
struct SurfacePatch {
    GridSpec grid;
    std::vector<vec3> positions;
    double k = 1.0;
    std::size_t anchor_i = 0, anchor_j = 0;
    bool immersed = true;

    SurfacePatch() = default;
    SurfacePatch(const GridSpec& g, double k_) : grid(g), positions(g.size()), k(k_) {}

    vec3& at(std::size_t i, std::size_t j) { return positions[grid.index(i, j)]; }
    const vec3& at(std::size_t i, std::size_t j) const { return positions[grid.index(i, j)]; }
};

// The positive weight of the k != 1 representation, 1 at the anchor.
struct GammaFactor {
    RealField values;
};

namespace detail {

inline bool upsilon_vanishes(const ComplexField& ups) {
    double m = 0.0;
    for (const complex& z : ups.values) m = std::max(m, std::abs(z));
    return m <= 1e-12;
}

} // namespace detail

// k = 1 representation: the patch is 4 Re of the path integrals of
// (Theta(1-G^2), i Theta(1+G^2), 2 Theta G), anchored to the origin.
inline SurfacePatch integrate_translator(const GaussField& gf,
                                         std::size_t anchor_i, std::size_t anchor_j) {
    if (gf.k != 1.0)
        throw argument_error("integrate_translator: requires k = 1");
    const GridSpec& g = gf.G.grid;
    if (anchor_i >= g.n_u || anchor_j >= g.n_v)
        throw index_error("integrate_translator: anchor outside grid");
    detail::require_nondegenerate(gf.G);

    WeierstrassIntegrands f = rw_integrands(gf);
    RealField x = cumulative_real_integral(f.first, anchor_i, anchor_j);
    RealField y = cumulative_real_integral(f.second, anchor_i, anchor_j);
    RealField z = cumulative_real_integral(f.third, anchor_i, anchor_j);

    SurfacePatch out(g, 1.0);
    out.anchor_i = anchor_i;
    out.anchor_j = anchor_j;
    for (std::size_t p = 0; p < out.positions.size(); ++p)
        out.positions[p] = vec3{4.0 * x.values[p], 4.0 * y.values[p], 4.0 * z.values[p]};
    out.immersed = !detail::upsilon_vanishes(upsilon(gf));
    return out;
}

struct SingularSurface {
    SurfacePatch patch;
    GammaFactor gamma;
};

// k != 1 representation: Gamma = exp(4(k-1) Re int Theta G dzeta) first,
// then x, y as 4k Re-integrals of the Gamma-weighted integrands and
// z = (2k/(k-1)) Gamma pointwise.
inline SingularSurface integrate_singular(const GaussField& gf,
                                          std::size_t anchor_i, std::size_t anchor_j) {
    if (gf.k == 1.0 || gf.k == 0.0)
        throw argument_error("integrate_singular: requires k outside {0, 1}");
    const GridSpec& g = gf.G.grid;
    if (anchor_i >= g.n_u || anchor_j >= g.n_v)
        throw index_error("integrate_singular: anchor outside grid");
    detail::require_nondegenerate(gf.G);

    ComplexField th = theta(gf);
    ComplexField tg(g);
    for (std::size_t p = 0; p < tg.values.size(); ++p)
        tg.values[p] = th.values[p] * gf.G.values[p];
    RealField pot = cumulative_real_integral(tg, anchor_i, anchor_j);

    RealField gamma(g);
    for (std::size_t i = 0; i < g.n_u; ++i)
        for (std::size_t j = 0; j < g.n_v; ++j) {
            double v = std::exp(4.0 * (gf.k - 1.0) * pot.at(i, j));
            if (!std::isfinite(v))
                throw blowup_error("integrate_singular: Gamma overflowed", i, j);
            gamma.at(i, j) = v;
        }

    WeierstrassIntegrands f = rw_integrands(gf, &gamma);
    RealField x = cumulative_real_integral(f.first, anchor_i, anchor_j);
    RealField y = cumulative_real_integral(f.second, anchor_i, anchor_j);

    SingularSurface out{SurfacePatch(g, gf.k), GammaFactor{gamma}};
    out.patch.anchor_i = anchor_i;
    out.patch.anchor_j = anchor_j;
    const double zscale = 2.0 * gf.k / (gf.k - 1.0);
    for (std::size_t p = 0; p < out.patch.positions.size(); ++p)
        out.patch.positions[p] = vec3{4.0 * gf.k * x.values[p], 4.0 * gf.k * y.values[p],
                                      zscale * gamma.values[p]};
    out.patch.immersed = !detail::upsilon_vanishes(upsilon(gf));
    return out;
}

// Moves the patch onto the Bjorling curve: for k = 1 a translation taking
// the mid-sample of the data row to beta there; for k != 1 the scale
// c0 = beta3/psi3 at the mid-sample followed by a horizontal translation.
inline SurfacePatch align(const SurfacePatch& patch, const BjorlingData& data) {
    const GridSpec& g = patch.grid;
    if (data.size() != g.n_u)
        throw dimension_error("align: data samples do not match the grid rows");
    const std::size_t i_star = (g.n_u - 1) / 2;
    const std::size_t j_row = patch.anchor_j;
    if (std::abs(data.u.front() - g.u_min) > 1e-9 ||
        std::abs(data.u.back() - g.u_max) > 1e-9)
        throw argument_error("align: data u-range disagrees with the grid");

    SurfacePatch out = patch;
    if (patch.k == 1.0) {
        vec3 shift = data.beta[i_star] - patch.at(i_star, j_row);
        for (vec3& p : out.positions) p = p + shift;
    } else {
        double z = patch.at(i_star, j_row)[2];
        if (std::abs(z) < 1e-14)
            throw argument_error("align: vanishing height at the anchor, cannot scale");
        double c0 = data.beta[i_star][2] / z;
        vec3 scaled = c0 * patch.at(i_star, j_row);
        vec3 shift{data.beta[i_star][0] - scaled[0], data.beta[i_star][1] - scaled[1], 0.0};
        for (vec3& p : out.positions) p = c0 * p + shift;
    }
    return out;
}

} // namespace solsurf
