#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace solsurf {

using complex = std::complex<double>;

// Rectangle in the (u,v) parameter plane, sampled on a uniform grid.
// A single row (n_v = 1) or a single point (1x1) is allowed; operations
// that need stencils enforce their own minimum sizes.
struct GridSpec {
    double u_min = 0.0, u_max = 1.0;
    std::size_t n_u = 2;
    double v_min = 0.0, v_max = 0.0;
    std::size_t n_v = 1;

    GridSpec() = default;
    GridSpec(double u0, double u1, std::size_t nu, double v0, double v1, std::size_t nv)
        : u_min(u0), u_max(u1), n_u(nu), v_min(v0), v_max(v1), n_v(nv) {
        if (n_u == 0 || n_v == 0)
            throw dimension_error("GridSpec: sample counts must be positive");
        if (n_u > 1 && !(u_max > u_min))
            throw dimension_error("GridSpec: u_max must exceed u_min");
        if (n_v > 1 && !(v_max > v_min))
            throw dimension_error("GridSpec: v_max must exceed v_min");
        if (!std::isfinite(u_min) || !std::isfinite(u_max) ||
            !std::isfinite(v_min) || !std::isfinite(v_max))
            throw dimension_error("GridSpec: extents must be finite");
    }

    double h_u() const { return n_u > 1 ? (u_max - u_min) / double(n_u - 1) : 0.0; }
    double h_v() const { return n_v > 1 ? (v_max - v_min) / double(n_v - 1) : 0.0; }
    double u(std::size_t i) const { return u_min + h_u() * double(i); }
    double v(std::size_t j) const { return v_min + h_v() * double(j); }
    std::size_t size() const { return n_u * n_v; }
    std::size_t index(std::size_t i, std::size_t j) const { return i * n_v + j; }

    bool same_shape(const GridSpec& o) const { return n_u == o.n_u && n_v == o.n_v; }
};

// n_u x n_v complex samples over a grid, row-major in u.
struct ComplexField {
    GridSpec grid;
    std::vector<complex> values;

    ComplexField() = default;
    explicit ComplexField(const GridSpec& g, complex fill = {})
        : grid(g), values(g.size(), fill) {}

    complex& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
    const complex& at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

// Real-valued companion of ComplexField (potentials, Gamma, curvature).
struct RealField {
    GridSpec grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}

    double& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
    const double& at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

// Builds a field by evaluating f(zeta) at every sample.
template <class F>
ComplexField sample_field(const GridSpec& g, F&& f) {
    ComplexField out(g);
    for (std::size_t i = 0; i < g.n_u; ++i)
        for (std::size_t j = 0; j < g.n_v; ++j)
            out.at(i, j) = f(complex(g.u(i), g.v(j)));
    return out;
}

inline bool all_finite(const ComplexField& f) {
    for (const complex& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

} // namespace solsurf
