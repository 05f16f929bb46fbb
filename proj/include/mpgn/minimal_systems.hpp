#pragma once

#include <optional>
#include <vector>

#include "mpgn/checks.hpp"
#include "mpgn/lattice.hpp"
#include "mpgn/minima.hpp"

namespace mpgn {

/// Up to d lattice points with their rank and envelope m_i = max_j |v_{j,i}|.
struct VectorSystem {
  static constexpr double kRankThreshold = 1e-9;

  std::vector<LatticePoint> points;
  int rank = 0;
  std::vector<double> envelope;

  /// Computes rank (singular values above 1e-9 relative to the largest)
  /// and envelope.
  static VectorSystem from_points(std::vector<LatticePoint> points);

  int dim() const { return static_cast<int>(envelope.size()); }
  /// prod_i m_i
  double envelope_volume() const;
  /// Each vector's first nonzero coordinate made positive, vectors sorted
  /// lexicographically by coordinates.
  void normalize();
};

struct MinimalityResult {
  bool minimal = true;
  std::optional<LatticePoint> witness;
};

/// Whether no nonzero lattice point lies in the open box prod (-m_i, m_i).
/// Boundary points (within a relative 1e-12 of the box) do not count. A
/// system with some m_i = 0 is vacuously minimal.
MinimalityResult is_minimal_system(const Lattice& lattice, const VectorSystem& sys,
                                   const EngineOptions& engine = {});

/// Bases of a 3-dimensional lattice made of points with sup-norm at most
/// `search_radius` that are minimal systems, normalized and deduplicated,
/// sorted by envelope volume. Every vector of a minimal system is itself a
/// minimal point, so only those are combined.
std::vector<VectorSystem> find_minkowski_bases(const Lattice& lattice, double search_radius,
                                               const EngineOptions& engine = {});

struct EnvelopeGap {
  int systems = 0;
  /// min over systems of prod m_i / |det(v_1..v_d)|
  double min_volume = 0.0;
  /// 1/d!: the determinant expands into d! terms, each at most prod m_i.
  double floor = 0.0;
  bool above_floor = false;
};

/// Throws BadParams on a system of rank < d.
EnvelopeGap envelope_volume_gap(const Lattice& lattice, const std::vector<VectorSystem>& systems);

/// A nonzero lattice point with every coordinate but one at most
/// 1e-9 * radius in absolute value, and sup-norm at most `radius`.
std::optional<LatticePoint> find_axis_point(const Lattice& lattice, double radius,
                                            const EngineOptions& engine = {});

struct DegeneracyOptions {
  RelationOptions relation;
  /// Search radius for the irrationality test.
  double axis_radius = 1e4;
  EngineOptions engine;
};

/// Window constants (c_1, c_2) with c_1 <= psi_lower_1 and psi_upper_d <= c_2
/// for sup-type gauges in dimension d. Throws BadParams for weighted gauges.
std::pair<double, double> degeneracy_window(const GaugeFunction& f, int dim);

/// Exponent relations forced in dimension 3 when no coordinate axis holds a
/// lattice point: the vanishing exponents, the window, and the four duality
/// equalities. `est` is for Lambda with gauge f, `dual_conjugate` for
/// Lambda* with f*. Throws NotIrrational.
CheckReport d3_degeneracy_check(const Lattice& lattice, const EstimateSet& est,
                                const EstimateSet& dual_conjugate, const DegeneracyOptions& options = {});

}  // namespace mpgn
