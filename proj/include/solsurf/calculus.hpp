#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"

namespace solsurf {

namespace detail {

// One-dimensional finite differences on complex samples.
//
// The formulas are arranged so that reflecting the input array produces the
// exactly negated-and-reflected output (first derivatives) or the exactly
// reflected output (second derivatives), bit for bit: paired differences
// f[i+1]-f[i-1] for odd stencils, commutative sums f[i+1]+f[i-1] for even
// ones, and boundary closures applied with the same coefficient order from
// either end. Symmetry checks downstream rely on this.

inline std::vector<complex> deriv1(const std::vector<complex>& f, double h, int order) {
    const std::size_t n = f.size();
    if (!(h > 0.0)) throw argument_error("deriv1: spacing must be positive");
    std::vector<complex> d(n);
    if (order == 2) {
        if (n < 3) throw dimension_error("deriv1: need at least 3 samples");
        const double s = 0.5 / h;
        d[0] = (f[0] * -3.0 + f[1] * 4.0 - f[2]) * s;
        for (std::size_t i = 1; i + 1 < n; ++i)
            d[i] = (f[i + 1] - f[i - 1]) * s;
        d[n - 1] = -((f[n - 1] * -3.0 + f[n - 2] * 4.0 - f[n - 3]) * s);
    } else if (order == 4) {
        if (n < 5) throw dimension_error("deriv1: need at least 5 samples");
        const double s = 1.0 / (12.0 * h);
        auto closure0 = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::size_t dd, std::size_t e) {
            return (f[a] * -25.0 + f[b] * 48.0 + f[c] * -36.0 + f[dd] * 16.0 + f[e] * -3.0) * s;
        };
        auto closure1 = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::size_t dd, std::size_t e) {
            return (f[a] * -3.0 + f[b] * -10.0 + f[c] * 18.0 + f[dd] * -6.0 + f[e]) * s;
        };
        d[0] = closure0(0, 1, 2, 3, 4);
        d[1] = closure1(0, 1, 2, 3, 4);
        for (std::size_t i = 2; i + 2 < n; ++i)
            d[i] = ((f[i + 1] - f[i - 1]) * 8.0 - (f[i + 2] - f[i - 2])) * s;
        d[n - 2] = -closure1(n - 1, n - 2, n - 3, n - 4, n - 5);
        d[n - 1] = -closure0(n - 1, n - 2, n - 3, n - 4, n - 5);
    } else {
        throw argument_error("deriv1: order must be 2 or 4");
    }
    return d;
}

inline std::vector<complex> deriv2(const std::vector<complex>& f, double h, int order) {
    const std::size_t n = f.size();
    if (!(h > 0.0)) throw argument_error("deriv2: spacing must be positive");
    std::vector<complex> d(n);
    if (order == 2) {
        if (n < 4) throw dimension_error("deriv2: need at least 4 samples");
        const double s = 1.0 / (h * h);
        auto closure0 = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t dd) {
            return (f[a] * 2.0 + f[b] * -5.0 + f[c] * 4.0 - f[dd]) * s;
        };
        d[0] = closure0(0, 1, 2, 3);
        for (std::size_t i = 1; i + 1 < n; ++i)
            d[i] = ((f[i + 1] + f[i - 1]) - f[i] * 2.0) * s;
        d[n - 1] = closure0(n - 1, n - 2, n - 3, n - 4);
    } else if (order == 4) {
        if (n < 6) throw dimension_error("deriv2: need at least 6 samples");
        const double s = 1.0 / (12.0 * h * h);
        auto closure0 = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::size_t dd, std::size_t e, std::size_t g) {
            return (f[a] * 45.0 + f[b] * -154.0 + f[c] * 214.0 + f[dd] * -156.0 +
                    f[e] * 61.0 + f[g] * -10.0) * s;
        };
        auto closure1 = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::size_t dd, std::size_t e, std::size_t g) {
            return (f[a] * 10.0 + f[b] * -15.0 + f[c] * -4.0 + f[dd] * 14.0 +
                    f[e] * -6.0 + f[g]) * s;
        };
        d[0] = closure0(0, 1, 2, 3, 4, 5);
        d[1] = closure1(0, 1, 2, 3, 4, 5);
        for (std::size_t i = 2; i + 2 < n; ++i)
            d[i] = ((f[i + 1] + f[i - 1]) * 16.0 - (f[i + 2] + f[i - 2]) - f[i] * 30.0) * s;
        d[n - 2] = closure1(n - 1, n - 2, n - 3, n - 4, n - 5, n - 6);
        d[n - 1] = closure0(n - 1, n - 2, n - 3, n - 4, n - 5, n - 6);
    } else {
        throw argument_error("deriv2: order must be 2 or 4");
    }
    return d;
}

enum class Axis { u, v };

template <class Kernel>
ComplexField apply_along(const ComplexField& f, Axis axis, Kernel&& kernel) {
    const GridSpec& g = f.grid;
    ComplexField out(g);
    if (axis == Axis::v) {
        std::vector<complex> line(g.n_v);
        for (std::size_t i = 0; i < g.n_u; ++i) {
            for (std::size_t j = 0; j < g.n_v; ++j) line[j] = f.at(i, j);
            std::vector<complex> d = kernel(line, g.h_v());
            for (std::size_t j = 0; j < g.n_v; ++j) out.at(i, j) = d[j];
        }
    } else {
        std::vector<complex> line(g.n_u);
        for (std::size_t j = 0; j < g.n_v; ++j) {
            for (std::size_t i = 0; i < g.n_u; ++i) line[i] = f.at(i, j);
            std::vector<complex> d = kernel(line, g.h_u());
            for (std::size_t i = 0; i < g.n_u; ++i) out.at(i, j) = d[i];
        }
    }
    return out;
}

inline ComplexField du(const ComplexField& f, int order = 2) {
    return apply_along(f, Axis::u, [order](const std::vector<complex>& line, double h) {
        return deriv1(line, h, order);
    });
}
inline ComplexField dv(const ComplexField& f, int order = 2) {
    return apply_along(f, Axis::v, [order](const std::vector<complex>& line, double h) {
        return deriv1(line, h, order);
    });
}
inline ComplexField duu(const ComplexField& f, int order = 2) {
    return apply_along(f, Axis::u, [order](const std::vector<complex>& line, double h) {
        return deriv2(line, h, order);
    });
}
inline ComplexField dvv(const ComplexField& f, int order = 2) {
    return apply_along(f, Axis::v, [order](const std::vector<complex>& line, double h) {
        return deriv2(line, h, order);
    });
}

} // namespace detail

// Wirtinger derivative 1/2 (d/du - i d/dv) by second-order differences.
inline ComplexField d_zeta(const ComplexField& f) {
    if (f.grid.n_u < 3 || f.grid.n_v < 3)
        throw dimension_error("d_zeta: grid must be at least 3x3");
    ComplexField fu = detail::du(f);
    ComplexField fv = detail::dv(f);
    ComplexField out(f.grid);
    const complex half(0.5, 0.0), half_i(0.0, 0.5);
    for (std::size_t p = 0; p < out.values.size(); ++p)
        out.values[p] = half * fu.values[p] - half_i * fv.values[p];
    return out;
}

// Wirtinger derivative 1/2 (d/du + i d/dv).
inline ComplexField d_zetabar(const ComplexField& f) {
    if (f.grid.n_u < 3 || f.grid.n_v < 3)
        throw dimension_error("d_zetabar: grid must be at least 3x3");
    ComplexField fu = detail::du(f);
    ComplexField fv = detail::dv(f);
    ComplexField out(f.grid);
    const complex half(0.5, 0.0), half_i(0.0, 0.5);
    for (std::size_t p = 0; p < out.values.size(); ++p)
        out.values[p] = half * fu.values[p] + half_i * fv.values[p];
    return out;
}

enum class IntegrationPath { u_then_v, v_then_u };

// Re \int f dzeta accumulated by the trapezoid rule along grid paths from the
// anchor: by default along the anchor row in u, then along each column in v.
// On u-legs dzeta = du contributes Re(f) du; on v-legs dzeta = i dv
// contributes -Im(f) dv. The result is anchored to zero at (i0, j0).
inline RealField cumulative_real_integral(const ComplexField& f,
                                          std::size_t i0, std::size_t j0,
                                          IntegrationPath path = IntegrationPath::u_then_v) {
    const GridSpec& g = f.grid;
    if (i0 >= g.n_u || j0 >= g.n_v)
        throw index_error("cumulative_real_integral: anchor outside grid");
    const double hu2 = 0.5 * g.h_u();
    const double hv2 = 0.5 * g.h_v();
    RealField out(g);

    auto sweep_u = [&](std::size_t j) {
        for (std::size_t i = i0; i + 1 < g.n_u; ++i)
            out.at(i + 1, j) = out.at(i, j) + (f.at(i, j).real() + f.at(i + 1, j).real()) * hu2;
        for (std::size_t i = i0; i > 0; --i)
            out.at(i - 1, j) = out.at(i, j) - (f.at(i - 1, j).real() + f.at(i, j).real()) * hu2;
    };
    auto sweep_v = [&](std::size_t i) {
        for (std::size_t j = j0; j + 1 < g.n_v; ++j)
            out.at(i, j + 1) = out.at(i, j) - (f.at(i, j).imag() + f.at(i, j + 1).imag()) * hv2;
        for (std::size_t j = j0; j > 0; --j)
            out.at(i, j - 1) = out.at(i, j) + (f.at(i, j - 1).imag() + f.at(i, j).imag()) * hv2;
    };

    if (path == IntegrationPath::u_then_v) {
        sweep_u(j0);
        for (std::size_t i = 0; i < g.n_u; ++i) sweep_v(i);
    } else {
        sweep_v(i0);
        for (std::size_t j = 0; j < g.n_v; ++j) sweep_u(j);
    }
    return out;
}

// State for line-by-line marching: a small set of rows, each a vector of
// complex samples over u.
using MarchState = std::vector<std::vector<complex>>;

namespace detail {

inline void check_state_finite(const MarchState& s, const std::string& stage) {
    for (std::size_t r = 0; r < s.size(); ++r)
        for (std::size_t i = 0; i < s[r].size(); ++i) {
            const complex& z = s[r][i];
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw blowup_error("rk4_march: non-finite value in " + stage, r, i);
        }
}

inline void check_same_shape(const MarchState& a, const MarchState& b) {
    if (a.size() != b.size())
        throw dimension_error("rk4_march: derivative row count mismatch");
    for (std::size_t r = 0; r < a.size(); ++r)
        if (a[r].size() != b[r].size())
            throw dimension_error("rk4_march: derivative row length mismatch");
}

inline MarchState state_axpy(const MarchState& y, double a, const MarchState& x) {
    MarchState out = y;
    for (std::size_t r = 0; r < out.size(); ++r)
        for (std::size_t i = 0; i < out[r].size(); ++i)
            out[r][i] += x[r][i] * a;
    return out;
}

} // namespace detail

// One classical fourth-order step of size h: state' = rhs(state).
template <class Rhs>
MarchState rk4_march(const MarchState& state, Rhs&& rhs, double h) {
    MarchState k1 = rhs(state);
    detail::check_same_shape(state, k1);
    detail::check_state_finite(k1, "stage 1");
    MarchState k2 = rhs(detail::state_axpy(state, 0.5 * h, k1));
    detail::check_same_shape(state, k2);
    detail::check_state_finite(k2, "stage 2");
    MarchState k3 = rhs(detail::state_axpy(state, 0.5 * h, k2));
    detail::check_same_shape(state, k3);
    detail::check_state_finite(k3, "stage 3");
    MarchState k4 = rhs(detail::state_axpy(state, h, k3));
    detail::check_same_shape(state, k4);
    detail::check_state_finite(k4, "stage 4");

    MarchState out = state;
    const double w = h / 6.0;
    for (std::size_t r = 0; r < out.size(); ++r)
        for (std::size_t i = 0; i < out[r].size(); ++i)
            out[r][i] += (k1[r][i] + (k2[r][i] + k3[r][i]) * 2.0 + k4[r][i]) * w;
    detail::check_state_finite(out, "result");
    return out;
}

} // namespace solsurf
