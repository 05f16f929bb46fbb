#pragma once

#include <string>
#include <vector>

#include "mpgn/tau.hpp"

namespace mpgn {

enum class GaugeKind { SupPlus, SupMinus, Sup, WeightedMax };

/// A gauge functional on the trace-zero hyperplane: non-negative, zero only
/// at the origin, positively homogeneous, so its sublevel sets exhaust the
/// hyperplane.
///
/// WeightedMax with weights w is f(tau) = max_i w_i tau_i, the weighted form
/// of |tau|_+; its conjugate f*(tau) = f(-tau) is represented by a flag.
class GaugeFunction {
 public:
  GaugeFunction() = default;
  static GaugeFunction sup_plus() { return GaugeFunction(GaugeKind::SupPlus); }
  static GaugeFunction sup_minus() { return GaugeFunction(GaugeKind::SupMinus); }
  static GaugeFunction sup() { return GaugeFunction(GaugeKind::Sup); }
  static GaugeFunction weighted(std::vector<double> weights);

  /// Parses "sup-plus", "sup-minus", "sup", "weighted:w1,..,wd" or
  /// "weighted*:w1,..,wd".
  static GaugeFunction parse(const std::string& text);

  GaugeKind kind() const { return kind_; }
  const std::vector<double>& weights() const { return weights_; }
  bool negated() const { return negated_; }

  double operator()(const TauVector& tau) const;
  GaugeFunction conjugate() const;
  std::string name() const;

  friend bool operator==(const GaugeFunction&, const GaugeFunction&) = default;

 private:
  explicit GaugeFunction(GaugeKind kind) : kind_(kind) {}
  GaugeKind kind_ = GaugeKind::SupPlus;
  std::vector<double> weights_;
  bool negated_ = false;
};

}  // namespace mpgn
