#pragma once

#include <span>
#include <vector>

namespace mpgn {

/// A point of the trace-zero hyperplane: components sum to zero.
///
/// The deformation it parameterizes is D = diag(exp(tau_1), ..., exp(tau_d)),
/// which preserves volume.
class TauVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  TauVector() = default;
  /// Throws BadParams when the components do not sum to zero.
  explicit TauVector(std::vector<double> components);

  static TauVector zero(int dim);
  /// Subtracts the mean, landing on the hyperplane exactly (up to rounding).
  static TauVector projected(std::vector<double> components);

  int dim() const { return static_cast<int>(components_.size()); }
  double operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  std::span<const double> components() const { return components_; }
  bool is_zero() const;

  TauVector operator-() const;
  TauVector scaled(double factor) const;
  double sup_norm() const;

  friend bool operator==(const TauVector&, const TauVector&) = default;

 private:
  std::vector<double> components_;
};

/// max_k tau_k
double gauge_plus(const TauVector& tau);
/// -min_k tau_k
double gauge_minus(const TauVector& tau);

}  // namespace mpgn
