#include "mpgn/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mpgn/error.hpp"
#include "mpgn/extended_real.hpp"

namespace mpgn {

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) throw OutOfDomain("finite extended real needs a finite value");
  ExtendedReal x;
  x.value_ = v;
  return x;
}

double ExtendedReal::value() const {
  if (!is_finite()) throw OutOfDomain("value of an infinite extended real");
  return value_;
}

std::string ExtendedReal::to_string() const {
  switch (state_) {
    case State::PositiveInfinity: return "inf";
    case State::NegativeInfinity: return "-inf";
    case State::Finite: break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

GaugeFunction GaugeFunction::weighted(std::vector<double> weights) {
  if (weights.size() < 2) throw BadParams("weighted gauge needs at least two weights");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw BadParams("gauge weights must be positive");
  GaugeFunction f(GaugeKind::WeightedMax);
  f.weights_ = std::move(weights);
  return f;
}

GaugeFunction GaugeFunction::parse(const std::string& text) {
  if (text == "sup-plus") return sup_plus();
  if (text == "sup-minus") return sup_minus();
  if (text == "sup") return sup();
  for (const char* prefix : {"weighted:", "weighted*:"}) {
    std::string p(prefix);
    if (text.rfind(p, 0) != 0) continue;
    std::vector<double> w;
    std::stringstream ss(text.substr(p.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        w.push_back(std::stod(item, &used));
        if (used != item.size()) throw BadParams("bad weight '" + item + "'");
      } catch (const std::logic_error&) {
        throw BadParams("bad weight '" + item + "'");
      }
    }
    GaugeFunction f = weighted(std::move(w));
    f.negated_ = p == "weighted*:";
    return f;
  }
  throw BadParams("unknown gauge '" + text + "'");
}

double GaugeFunction::operator()(const TauVector& tau) const {
  switch (kind_) {
    case GaugeKind::SupPlus: return gauge_plus(tau);
    case GaugeKind::SupMinus: return gauge_minus(tau);
    case GaugeKind::Sup: return tau.sup_norm();
    case GaugeKind::WeightedMax: {
      if (static_cast<int>(weights_.size()) != tau.dim()) throw BadParams("gauge weight count mismatch");
      double m = 0.0;
      for (int i = 0; i < tau.dim(); ++i)
        m = std::max(m, weights_[static_cast<std::size_t>(i)] * (negated_ ? -tau[i] : tau[i]));
      return m;
    }
  }
  return 0.0;
}

GaugeFunction GaugeFunction::conjugate() const {
  switch (kind_) {
    case GaugeKind::SupPlus: return sup_minus();
    case GaugeKind::SupMinus: return sup_plus();
    case GaugeKind::Sup: return sup();
    case GaugeKind::WeightedMax: {
      GaugeFunction f = *this;
      f.negated_ = !negated_;
      return f;
    }
  }
  return *this;
}

std::string GaugeFunction::name() const {
  switch (kind_) {
    case GaugeKind::SupPlus: return "sup-plus";
    case GaugeKind::SupMinus: return "sup-minus";
    case GaugeKind::Sup: return "sup";
    case GaugeKind::WeightedMax: break;
  }
  std::string s = negated_ ? "weighted*:" : "weighted:";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", weights_[i]);
    if (i) s += ',';
    s += buf;
  }
  return s;
}

}  // namespace mpgn
