#include "mpgn/minima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mpgn/error.hpp"
#include "reduction.hpp"

namespace mpgn {
namespace {

struct Candidate {
  double gauge;
  LatticePoint point;
  std::vector<std::int64_t> reduced;  // coordinates in the reduced basis
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.gauge != b.gauge) return a.gauge < b.gauge;
  return coeffs_less(a.point.coeffs, b.point.coeffs);
}

std::vector<double> row_scale_of(const TauVector& tau) {
  std::vector<double> s(static_cast<std::size_t>(tau.dim()));
  for (int i = 0; i < tau.dim(); ++i) s[static_cast<std::size_t>(i)] = std::exp(-tau[i]);
  return s;
}

void negate(Candidate& c) {
  for (auto& x : c.point.coeffs) x = -x;
  for (auto& x : c.point.coords) x = -x;
  for (auto& x : c.reduced) x = -x;
}

bool first_nonzero_negative(const Coeffs& c) {
  for (auto x : c)
    if (x != 0) return x < 0;
  return false;
}

void check_inputs(const Lattice& lattice, const TauVector& tau) {
  if (lattice.dim() < 2) throw BadParams("empty lattice");
  if (tau.dim() != lattice.dim()) throw BadParams("tau dimension mismatch");
}

constexpr double kTieMargin = 1e-10;

}  // namespace

MinimaProfile successive_minima(const Lattice& lattice, const TauVector& tau,
                                const EngineOptions& options) {
  check_inputs(lattice, tau);
  const int d = lattice.dim();
  auto context = [&] { return " (|tau| = " + std::to_string(tau.sup_norm()) + ")"; };

  MinimaProfile prof;
  prof.tau = tau;
  try {
    detail::ScaledReduction red = detail::reduce_scaled(lattice, row_scale_of(tau), options.lll_delta);
    std::vector<std::int64_t> last;
    for (int k = 0; k < d; ++k) {
      // Columns [0, k) span the saturation of the witnesses found so far;
      // lambda_{k+1} is the least gauge of a point with some coordinate
      // from k on nonzero.
      if (k > 0) {
        detail::adapt_basis(red, last, k - 1);
        detail::reduce_in_place(lattice, red, options.lll_delta, k);
      }
      Candidate best{std::numeric_limits<double>::infinity(), {}, {}};
      for (int j = k; j < d; ++j) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(j)] = 1;
        LatticePoint p = lattice.point(detail::apply_transform(red, e));
        Candidate c{cube_gauge(tau, p.coords), std::move(p), std::move(e)};
        if (first_nonzero_negative(c.point.coeffs)) negate(c);
        if (candidate_less(c, best)) best = std::move(c);
      }
      // Improvements must beat the incumbent by a relative margin; this
      // keeps degenerate lattices from enumerating huge plateaus of exact
      // ties, at a cost of at most kTieMargin in relative accuracy.
      double limit = best.gauge * (1.0 - kTieMargin);
      auto bounds = detail::level_bounds(red.reduced);
      detail::enumerate_sup(red, bounds, limit, detail::Pruning::Strict, k, options.budget,
                            [&](std::span<const std::int64_t> x) {
                              LatticePoint p = lattice.point(detail::apply_transform(red, x));
                              double g = cube_gauge(tau, p.coords);
                              if (!(g < limit)) return;
                              best = Candidate{g, std::move(p), {x.begin(), x.end()}};
                              if (first_nonzero_negative(best.point.coeffs)) negate(best);
                              limit = g * (1.0 - kTieMargin);
                            });
      prof.lambdas.push_back(best.gauge);
      prof.witnesses.push_back(std::move(best.point));
      last = std::move(best.reduced);
    }
  } catch (const BudgetExceeded& e) {
    std::string what = e.what();
    what.erase(0, what.find(": ") + 2);  // drop the class prefix
    throw BudgetExceeded(what + context());
  }

  if (options.perturb_index >= 1 && options.perturb_index <= d)
    prof.lambdas[static_cast<std::size_t>(options.perturb_index - 1)] *= options.perturb_factor;

  double sum = 0.0;
  for (double lam : prof.lambdas) {
    double l = std::log(lam);
    sum += l;
    prof.L.push_back(l);
    prof.S.push_back(sum);
  }
  return prof;
}

std::vector<LatticePoint> points_in_box(const Lattice& lattice, const TauVector& tau, double radius,
                                        const EngineOptions& options) {
  check_inputs(lattice, tau);
  if (!(radius > 0.0)) throw BadParams("radius must be positive");
  auto red = detail::reduce_scaled(lattice, row_scale_of(tau), options.lll_delta);
  auto bounds = detail::level_bounds(red.reduced);
  const double keep = radius * (1.0 + 1e-12);
  double limit = radius * (1.0 + 1e-10);
  std::vector<Candidate> all;
  detail::enumerate_sup(red, bounds, limit, detail::Pruning::Inclusive, 0, options.budget,
                        [&](std::span<const std::int64_t> x) {
                          LatticePoint p = lattice.point(detail::apply_transform(red, x));
                          double g = cube_gauge(tau, p.coords);
                          if (!(g <= keep)) return;
                          Candidate c{g, std::move(p), {}};
                          Candidate neg = c;
                          negate(neg);
                          all.push_back(std::move(neg));
                          all.push_back(std::move(c));
                        });
  std::sort(all.begin(), all.end(), candidate_less);
  std::vector<LatticePoint> out;
  out.reserve(all.size());
  for (auto& c : all) out.push_back(std::move(c.point));
  return out;
}

double vector_gauge_log(const TauVector& tau, std::span<const double> v) {
  if (static_cast<int>(v.size()) != tau.dim()) throw BadParams("dimension mismatch");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (int i = 0; i < tau.dim(); ++i) {
    double vi = v[static_cast<std::size_t>(i)];
    if (vi == 0.0) continue;
    any = true;
    best = std::max(best, std::log(std::abs(vi)) - tau[i]);
  }
  if (!any) throw ZeroVector("L_v is undefined for v = 0");
  return best;
}

double vector_gauge_log(const TauVector& tau, const LatticePoint& v) {
  return vector_gauge_log(tau, std::span<const double>(v.coords));
}

TauVector tau_of_vector(std::span<const double> v) {
  if (v.size() < 2) throw BadParams("vector needs at least two coordinates");
  std::vector<double> logs;
  logs.reserve(v.size());
  for (double vi : v) {
    if (vi == 0.0) throw DegenerateVector("tau(v) needs every coordinate nonzero");
    logs.push_back(std::log(std::abs(vi)));
  }
  // log(|v_i| / Pi(v)) = log|v_i| - mean_j log|v_j|.
  return TauVector::projected(std::move(logs));
}

TauVector tau_of_vector(const LatticePoint& v) {
  return tau_of_vector(std::span<const double>(v.coords));
}

}  // namespace mpgn
