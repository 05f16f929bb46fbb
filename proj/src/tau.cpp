#include "mpgn/tau.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mpgn/error.hpp"

namespace mpgn {

TauVector::TauVector(std::vector<double> components) : components_(std::move(components)) {
  if (components_.size() < 2) throw BadParams("tau needs at least two components");
  double sum = std::accumulate(components_.begin(), components_.end(), 0.0);
  if (!std::isfinite(sum) || std::abs(sum) > kSumTolerance)
    throw BadParams("tau components must sum to zero (sum = " + std::to_string(sum) + ")");
}

TauVector TauVector::zero(int dim) {
  return TauVector(std::vector<double>(static_cast<std::size_t>(dim), 0.0));
}

TauVector TauVector::projected(std::vector<double> components) {
  if (components.empty()) throw BadParams("empty tau");
  // Two passes: the second removes the rounding residue of the first.
  for (int pass = 0; pass < 2; ++pass) {
    double mean = std::accumulate(components.begin(), components.end(), 0.0) /
                  static_cast<double>(components.size());
    for (double& x : components) x -= mean;
  }
  return TauVector(std::move(components));
}

bool TauVector::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](double x) { return x == 0.0; });
}

TauVector TauVector::operator-() const {
  TauVector out = *this;
  for (double& x : out.components_) x = -x;
  return out;
}

TauVector TauVector::scaled(double factor) const {
  TauVector out = *this;
  for (double& x : out.components_) x *= factor;
  return out;
}

double TauVector::sup_norm() const {
  double m = 0.0;
  for (double x : components_) m = std::max(m, std::abs(x));
  return m;
}

double gauge_plus(const TauVector& tau) {
  auto c = tau.components();
  return std::max(0.0, *std::max_element(c.begin(), c.end()));
}

double gauge_minus(const TauVector& tau) {
  auto c = tau.components();
  return std::max(0.0, -*std::min_element(c.begin(), c.end()));
}

}  // namespace mpgn
