#pragma once

// LLL reduction and sup-norm enumeration of a diagonally rescaled lattice.
// Internal to the minima engine.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mpgn/lattice.hpp"

namespace mpgn::detail {

using IntMatrix = std::vector<std::int64_t>;  // row-major d x d

struct ScaledReduction {
  int dim = 0;
  std::vector<double> row_scale;  // e^{-tau_i}
  IntMatrix transform;            // reduced basis = basis * transform
  Matrix reduced;                 // row_scale * basis * transform
};

/// LLL-reduces diag(row_scale) * basis. The reduced matrix is always
/// recomputed from the integer transform with compensated arithmetic, so
/// rounding inside the reduction loop can cost efficiency but not accuracy.
ScaledReduction reduce_scaled(const Lattice& lattice, std::span<const double> row_scale,
                              double delta = 0.99);

/// Re-reduces from the current transform. Columns [0, barrier) and
/// [barrier, d) are reduced as separate blocks (the second one projected
/// away from the first), so the span of the leading block is preserved.
void reduce_in_place(const Lattice& lattice, ScaledReduction& red, double delta, int barrier);

/// Coefficients (lattice basis coordinates) of U x.
Coeffs apply_transform(const ScaledReduction& red, std::span<const std::int64_t> x);

/// Given x whose entries from `lead` on are not all zero, changes the basis
/// so that columns [0, lead] span the saturation of span(columns [0, lead),
/// reduced * x). Columns before `lead` are untouched.
void adapt_basis(ScaledReduction& red, std::span<const std::int64_t> x, int lead);

/// Exact sup-norm distance bounds for each enumeration level. For level i
/// the sup-norm distance from sum_{j >= i} x_j b_j to span(b_0..b_{i-1}) is
/// max over the stored vertices alpha of |sum_j alpha_j x_j| (vertices of
/// the polar of the projected cube, one per +- pair).
struct LevelBounds {
  int dim = 0;
  std::vector<std::vector<std::vector<double>>> vertices;  // [level][vertex][j - level]
};

LevelBounds level_bounds(const Matrix& reduced);

enum class Pruning {
  Strict,     // keep subtrees whose distance bound is < limit
  Inclusive,  // keep subtrees whose distance bound is <= limit
};

/// Depth-first enumeration of integer x (levels d-1 down to 0) with the
/// sup-norm of reduced * x below `limit`, which the visitor may lower while
/// the search runs. Entries from `nonzero_from` on are not all zero; one
/// representative per +-x pair (first nonzero entry from the top positive).
/// Counts visited nodes against `budget`.
void enumerate_sup(const ScaledReduction& red, const LevelBounds& bounds, double& limit,
                   Pruning pruning, int nonzero_from, std::uint64_t budget,
                   const std::function<void(std::span<const std::int64_t>)>& visit);

/// Rank of a set of integer vectors, computed exactly (fraction-free
/// elimination in 128-bit arithmetic).
int integer_rank(const std::vector<std::vector<std::int64_t>>& rows);

}  // namespace mpgn::detail
