#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solsurf {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Grid/field shape mismatches and grids too small for a stencil.
struct dimension_error : error {
    using error::error;
};

// Bad argument combinations (missing Gamma field, too few grids, ...).
struct argument_error : error {
    using error::error;
};

// Anchor or sample index outside the grid.
struct index_error : error {
    using error::error;
};

// |G| within the margin of 1: the denominator 1-|G|^4 collapses.
struct degeneracy_error : error {
    degeneracy_error(const std::string& what, std::size_t i, std::size_t j)
        : error(what), i(i), j(j) {}
    std::size_t i, j;
};

// Non-finite values appeared (marching blow-up, exp overflow).
struct blowup_error : error {
    blowup_error(const std::string& what, std::size_t i, std::size_t j)
        : error(what), i(i), j(j) {}
    std::size_t i, j;
};

// An ODE solution left its admissible domain (|m| -> 1).
struct domain_exit_error : error {
    domain_exit_error(const std::string& what, double u) : error(what), u(u) {}
    double u;
};

// Degenerate first fundamental form in curvature evaluation.
struct metric_error : error {
    using error::error;
};

// Named violations of the Bjorling data conditions.
enum class violation {
    non_unit_normal,
    non_orthogonal_normal,
    normal_points_down,     // V3 <= 0
    curve_not_above_plane,  // beta3 <= 0 with k != 1
    degenerate_velocity,    // |beta'| = 0
    k_is_zero,
    non_increasing_samples,
};

inline const char* violation_name(violation v) {
    switch (v) {
        case violation::non_unit_normal:        return "non_unit_normal";
        case violation::non_orthogonal_normal:  return "non_orthogonal_normal";
        case violation::normal_points_down:     return "normal_points_down";
        case violation::curve_not_above_plane:  return "curve_not_above_plane";
        case violation::degenerate_velocity:    return "degenerate_velocity";
        case violation::k_is_zero:              return "k_is_zero";
        case violation::non_increasing_samples: return "non_increasing_samples";
    }
    return "unknown";
}

// First violated data condition, with the sample where it happened.
struct validation_error : error {
    validation_error(violation which, std::size_t sample, const std::string& what)
        : error(what), which(which), sample(sample) {}
    violation which;
    std::size_t sample;
};

// Precondition failures of the structural checks (symmetry, periodicity).
struct precondition_error : error {
    using error::error;
};

// Unreadable/unwritable paths and malformed files.
struct io_error : error {
    using error::error;
};

} // namespace solsurf
