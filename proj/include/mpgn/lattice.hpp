#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mpgn/tau.hpp"

namespace mpgn {

using Matrix = Eigen::MatrixXd;
using Coeffs = std::vector<std::int64_t>;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Default enumeration budget; the MPGN_BUDGET environment variable overrides it.
std::uint64_t default_budget();

/// A lattice vector, kept both in basis coordinates (exact) and ambient
/// coordinates.
struct LatticePoint {
  Coeffs coeffs;
  std::vector<double> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  bool is_zero() const;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// Full-rank lattice in R^d. Columns of the basis matrix are the generators.
///
/// Every Lattice is unimodular: construction rescales the basis by
/// |det|^(-1/d) unless |det| is already within 1e-12 of 1, so that a basis
/// read back from a file is reproduced bit for bit.
class Lattice {
 public:
  static constexpr double kSingularThreshold = 1e-12;

  Lattice() = default;
  explicit Lattice(const Matrix& basis, std::string label = {});

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& inverse() const { return inverse_; }
  double det() const { return det_; }
  const std::string& label() const { return label_; }

  /// The lattice vector with the given basis coordinates. Ambient
  /// coordinates are computed with compensated dot products.
  LatticePoint point(std::span<const std::int64_t> coeffs) const;

  Lattice with_label(std::string label) const;

 private:
  Matrix basis_;
  Matrix inverse_;
  double det_ = 0.0;
  std::string label_;
};

Lattice normalize_unimodular(const Matrix& basis, std::string label = {});

/// Basis (B^T)^{-1}; its columns pair with those of B to the identity.
Lattice dual_lattice(const Lattice& lattice);

/// Geometric mean of |x_i|; exactly 0 when some coordinate vanishes.
double product_form(std::span<const double> x);

double sup_norm(std::span<const double> x);

/// max_i |v_i| exp(-tau_i): the dilation factor at which v enters the
/// deformed unit cube.
double cube_gauge(const TauVector& tau, std::span<const double> v);

/// Deterministic order on coefficient vectors: lexicographic on absolute
/// values, then on signed values.
bool coeffs_less(const Coeffs& a, const Coeffs& b);

/// Brute-force enumeration of every nonzero lattice point in the deformed
/// cube of the given radius. Completeness comes from the coefficient box
/// |c_i| <= radius * ||row_i(B^{-1} D)||_1. Sorted by gauge, then by
/// coeffs_less. Throws BudgetExceeded when the box holds more than
/// `budget` candidates.
std::vector<LatticePoint> enumerate_points(const Lattice& lattice,
                                           const TauVector& tau, double radius,
                                           std::uint64_t budget = default_budget());

enum class TestLatticeKind {
  Integer,
  TotallyRealCubic,
  Unipotent,
  RandomUnimodular,
  AxisSublattice,
};

struct TestLatticeParams {
  int dim = 3;
  std::uint64_t seed = 0;
  /// Unipotent kind: first-row entries theta_1..theta_{d-1}.
  std::vector<double> thetas;
  /// Axis-sublattice kind: diagonal scaling; drawn from the seed when empty.
  std::vector<double> diagonal;
};

TestLatticeKind parse_test_lattice_kind(const std::string& name);
std::string to_string(TestLatticeKind kind);

Lattice make_test_lattice(TestLatticeKind kind, const TestLatticeParams& params = {});

}  // namespace mpgn
