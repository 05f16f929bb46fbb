#include "mpgn/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mpgn/error.hpp"
#include "numeric.hpp"
#include "parallel.hpp"

namespace mpgn {

bool CheckReport::passed() const {
  return std::all_of(worst_slack.begin(), worst_slack.end(),
                     [](const auto& kv) { return kv.second >= -kSlackTolerance; });
}

void CheckReport::record(const std::string& name, double slack) {
  auto [it, inserted] = worst_slack.emplace(name, slack);
  if (!inserted) it->second = std::min(it->second, slack);
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& [k, v] : other.worst_slack) record(k, v);
  for (const auto& [k, v] : other.constants) constants[k] = v;
  for (const auto& l : other.lattices)
    if (std::find(lattices.begin(), lattices.end(), l) == lattices.end()) lattices.push_back(l);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  sample_count += other.sample_count;
}

std::vector<std::string> CheckReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : worst_slack)
    if (v < -kSlackTolerance) out.push_back(k);
  return out;
}

std::vector<TauVector> random_tau_samples(int dim, std::size_t count, double max_norm, std::uint64_t seed) {
  if (dim < 2) throw BadParams("dimension must be at least 2");
  if (!(max_norm >= 0.0)) throw BadParams("max norm must be non-negative");
  std::mt19937_64 rng(seed);
  std::vector<TauVector> out;
  out.reserve(count);
  while (out.size() < count) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (double& x : v) x = detail::uniform(rng, -1.0, 1.0);
    TauVector u = TauVector::projected(std::move(v));
    double n = u.sup_norm();
    if (n < 1e-3) continue;
    double r = detail::uniform(rng, 0.0, max_norm);
    std::vector<double> c(u.components().begin(), u.components().end());
    for (double& x : c) x *= r / n;
    out.push_back(TauVector::projected(std::move(c)));
  }
  return out;
}

namespace {

double log_factorial(int d) {
  return std::lgamma(static_cast<double>(d) + 1.0);
}

std::vector<MinimaProfile> profiles(const Lattice& lattice, const std::vector<TauVector>& samples,
                                    const EngineOptions& engine, bool negate = false) {
  std::vector<MinimaProfile> out(samples.size());
  detail::parallel_for(samples.size(), 0, [&](std::size_t i) {
    out[i] = successive_minima(lattice, negate ? -samples[i] : samples[i], engine);
  });
  return out;
}

CheckReport start(const std::string& name, const Lattice& lattice, std::size_t n) {
  CheckReport r;
  r.check_name = name;
  r.lattices.push_back(lattice.label());
  r.sample_count = n;
  return r;
}

std::string idx(const char* fmt, int k) {
  std::string s = fmt;
  auto pos = s.find("{k}");
  if (pos != std::string::npos) s.replace(pos, 3, std::to_string(k));
  return s;
}

}  // namespace

CheckReport check_L_properties(const Lattice& lattice, const std::vector<TauVector>& samples,
                               const EngineOptions& engine) {
  const int d = lattice.dim();
  CheckReport r = start("L_properties", lattice, samples.size());
  const MinimaProfile origin = successive_minima(lattice, TauVector::zero(d), engine);
  const double l1_0 = origin.L.front(), ld_0 = origin.L.back();
  r.constants["L_1(0)"] = l1_0;
  r.constants["L_d(0)"] = ld_0;

  const auto prof = profiles(lattice, samples, engine);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& p = prof[s];
    const auto& tau = samples[s];
    for (int k = 0; k + 1 < d; ++k)
      r.record(idx("L_k <= L_{k+1}, k={k}", k + 1), p.L[static_cast<std::size_t>(k + 1)] - p.L[static_cast<std::size_t>(k)]);
    r.record("L_1 <= 0", -p.L.front());
    r.record("-L_1 <= |tau|_+ - L_1(0)", gauge_plus(tau) - l1_0 + p.L.front());
    r.record("L_d <= |tau|_- + L_d(0)", gauge_minus(tau) + ld_0 - p.L.back());
    if (s + 1 < samples.size()) {
      const auto& q = prof[s + 1];
      std::vector<double> diff(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = tau[i] - samples[s + 1][i];
      const double dist = sup_norm(std::span<const double>(diff));
      for (int k = 0; k < d; ++k)
        r.record(idx("L_k 1-Lipschitz, k={k}", k + 1),
                 dist - std::abs(p.L[static_cast<std::size_t>(k)] - q.L[static_cast<std::size_t>(k)]));
    }
  }
  return r;
}

CheckReport check_S_properties(const Lattice& lattice, const std::vector<TauVector>& samples,
                               const EngineOptions& engine) {
  const int d = lattice.dim();
  const double lf = log_factorial(d);
  CheckReport r = start("S_properties", lattice, samples.size());
  r.constants["log d!"] = lf;
  for (const auto& p : profiles(lattice, samples, engine)) {
    auto S = [&](int k) { return p.S[static_cast<std::size_t>(k - 1)]; };
    auto L = [&](int k) { return p.L[static_cast<std::size_t>(k - 1)]; };
    r.record("S_d <= 0", -S(d));
    r.record("S_d >= -log d!", S(d) + lf);
    for (int k = 1; k <= d - 2; ++k) {
      r.record(idx("(k+1)/k S_k <= S_{k+1}, k={k}", k), S(k + 1) - (k + 1.0) / k * S(k));
      r.record(idx("S_{k+1} <= (d-k-1)/(d-k) S_k, k={k}", k),
               (d - k - 1.0) / (d - k) * S(k) - S(k + 1));
    }
    for (int k = 1; k <= d - 1; ++k) r.record(idx("S_k <= k L_{k+1}, k={k}", k), k * L(k + 1) - S(k));
    r.record("(d-1) S_1 <= S_{d-1}", S(d - 1) - (d - 1.0) * S(1));
    r.record("S_{d-1} <= S_1/(d-1)", S(1) / (d - 1.0) - S(d - 1));
    r.record("|S_{d-1} + L_d| <= log d!", lf - std::abs(S(d - 1) + L(d)));
  }
  return r;
}

CheckReport check_duality(const Lattice& lattice, const std::vector<TauVector>& samples,
                          const EngineOptions& engine) {
  const int d = lattice.dim();
  const double lf = log_factorial(d), ld = std::log(static_cast<double>(d));
  const Lattice dual = dual_lattice(lattice);
  CheckReport r = start("duality", lattice, samples.size());
  r.lattices.push_back(dual.label());
  r.constants["log d"] = ld;
  r.constants["log d!"] = lf;
  const auto prof = profiles(lattice, samples, engine);
  const auto dprof = profiles(dual, samples, engine, true);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& p = prof[s];
    const auto& q = dprof[s];
    for (int k = 1; k <= d; ++k) {
      double sum = p.L[static_cast<std::size_t>(k - 1)] + q.L[static_cast<std::size_t>(d - k)];
      r.record(idx("L_k + L*_{d+1-k} >= -log d, k={k}", k), sum + ld);
      r.record(idx("L_k + L*_{d+1-k} <= log d!, k={k}", k), lf - sum);
    }
    for (int k = 1; k <= d - 1; ++k) {
      double diff = p.S[static_cast<std::size_t>(k - 1)] - q.S[static_cast<std::size_t>(d - k - 1)];
      r.record(idx("S_k - S*_{d-k} >= -k log d, k={k}", k), diff + k * ld);
      r.record(idx("S_k - S*_{d-k} <= (k+1) log d!, k={k}", k), (k + 1) * lf - diff);
    }
  }
  return r;
}

CheckReport check_transference_local(const Lattice& lattice, const std::vector<TauVector>& samples,
                                     const EngineOptions& engine) {
  const int d = lattice.dim();
  const double lf = log_factorial(d), ld = std::log(static_cast<double>(d));
  const double c = 2.0 * lf;
  const Lattice dual = dual_lattice(lattice);
  CheckReport r = start("transference_local", lattice, samples.size());
  r.lattices.push_back(dual.label());
  r.constants["log d"] = ld;
  r.constants["log d!"] = lf;
  r.constants["C"] = c;
  const auto prof = profiles(lattice, samples, engine);
  const auto dprof = profiles(dual, samples, engine, true);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& p = prof[s];
    const auto& q = dprof[s];
    auto S = [&](int k) { return p.S[static_cast<std::size_t>(k - 1)]; };
    auto Sd = [&](int k) { return q.S[static_cast<std::size_t>(k - 1)]; };
    for (int k = 1; k + 1 <= d - 1; ++k) {
      r.record(idx("S_k/k <= S_{k+1}/(k+1), k={k}", k), S(k + 1) / (k + 1.0) - S(k) / k);
      r.record(idx("S_{k+1}/(d-k-1) <= S_k/(d-k), k={k}", k), S(k) / (d - k) - S(k + 1) / (d - k - 1.0));
    }
    for (int k = 1; k <= d - 1; ++k) {
      double diff = S(k) - Sd(d - k);
      r.record(idx("|S_k - S*_{d-k}| lower, k={k}", k), diff + k * ld);
      r.record(idx("|S_k - S*_{d-k}| upper, k={k}", k), (k + 1) * lf - diff);
    }
    r.record("S_1 <= S*_1/(d-1) + C", Sd(1) / (d - 1.0) + c - S(1));
    r.record("S_1 >= (d-1) S*_1 - log d", S(1) - (d - 1.0) * Sd(1) + ld);
  }
  return r;
}

CheckReport check_all_local(const Lattice& lattice, const std::vector<TauVector>& samples,
                            const EngineOptions& engine) {
  CheckReport r = check_L_properties(lattice, samples, engine);
  r.check_name = "suite";
  const std::size_t n = r.sample_count;
  r.merge(check_S_properties(lattice, samples, engine));
  r.merge(check_duality(lattice, samples, engine));
  r.merge(check_transference_local(lattice, samples, engine));
  r.sample_count = n;
  return r;
}

double default_relation_tolerance(const std::vector<const EstimateSet*>& sets) {
  double t = 0.0;
  for (const auto* s : sets) t = std::max(t, s->max_oscillation());
  return t;
}

namespace {

class RelationRecorder {
 public:
  RelationRecorder(CheckReport& report, double tol, double f_min, bool finite_terms)
      : report_(report), tol_(tol), f_min_(f_min), finite_terms_(finite_terms) {}

  double allowance(double constant) const {
    double a = tol_;
    if (finite_terms_ && constant > 0.0) a += constant / f_min_;
    return a;
  }
  // lhs <= rhs up to the allowance.
  void le(const std::string& name, double lhs, double rhs, double constant = 0.0) {
    report_.record(name, rhs - lhs + allowance(constant));
  }
  void eq(const std::string& name, double a, double b, double constant = 0.0) {
    report_.record(name, allowance(constant) - std::abs(a - b));
  }

 private:
  CheckReport& report_;
  double tol_, f_min_;
  bool finite_terms_;
};

void check_same_shape(const EstimateSet& a, const EstimateSet& b) {
  if (a.dim != b.dim) throw BadParams("estimate sets have different dimensions");
}

CheckReport relation_report(const std::string& name, const EstimateSet& est, const EstimateSet& dual_f,
                            const EstimateSet& dual_conjugate, const RelationOptions& options,
                            double& tol, double& f_min) {
  check_same_shape(est, dual_f);
  check_same_shape(est, dual_conjugate);
  if (!(dual_conjugate.f == est.f.conjugate()))
    throw BadParams("dual estimates must use the conjugate gauge " + est.f.conjugate().name());
  if (!(dual_f.f == est.f)) throw BadParams("dual estimates must use the gauge " + est.f.name());
  tol = options.tol ? *options.tol : default_relation_tolerance({&est, &dual_f, &dual_conjugate});
  if (!(tol >= 0.0)) throw BadParams("tolerance must be non-negative");
  f_min = std::min({est.shell_f_min, dual_f.shell_f_min, dual_conjugate.shell_f_min});
  CheckReport r;
  r.check_name = name;
  r.lattices = {est.lattice, dual_f.lattice};
  r.sample_count = 3;
  r.constants["tol"] = tol;
  r.constants["f_min"] = f_min;
  r.constants["log d!"] = log_factorial(est.dim);
  return r;
}

void split_chain(RelationRecorder& rec, const EstimateSet& est, const EstimateSet& dual_f,
                 const EstimateSet& dual_conjugate) {
  const int d = est.dim;
  const double lf = log_factorial(d);
  auto PL = [&](const EstimateSet& e, int k) { return e.value(ExponentKind::PsiSumLower, k); };
  for (int k = 1; k + 1 <= d - 1; ++k)
    rec.le(idx("split: Psi_k/k <= Psi_{k+1}/(k+1), k={k}", k), PL(est, k) / k, PL(est, k + 1) / (k + 1.0));
  const double dm1 = d - 1.0;
  rec.le("split: Psi_{d-1}/(d-1) <= Psi_1(dual, f)/(d-1)^2", PL(est, d - 1) / dm1, PL(dual_f, 1) / (dm1 * dm1),
         2.0 * lf);
  rec.le("conjugate: Psi_1 <= Psi_1(dual, f*)/(d-1)", PL(est, 1), PL(dual_conjugate, 1) / dm1, 2.0 * lf);
}

}  // namespace

CheckReport check_exponent_relations(const EstimateSet& est, const EstimateSet& dual_f,
                                     const EstimateSet& dual_conjugate, const RelationOptions& options) {
  double tol = 0.0, f_min = 0.0;
  CheckReport r = relation_report("exponent_relations", est, dual_f, dual_conjugate, options, tol, f_min);
  RelationRecorder rec(r, tol, f_min, options.finite_radius_terms);
  const int d = est.dim;
  const double lf = log_factorial(d);
  using K = ExponentKind;
  auto v = [](const EstimateSet& e, K kind, int k) { return e.value(kind, k); };

  for (int k = 1; k <= d; ++k) {
    rec.le(idx("psi_lower <= psi_upper, k={k}", k), v(est, K::PsiLower, k), v(est, K::PsiUpper, k));
    rec.le(idx("Psi_lower <= Psi_upper, k={k}", k), v(est, K::PsiSumLower, k), v(est, K::PsiSumUpper, k));
  }
  // (i) monotonicity in k
  for (int k = 1; k < d; ++k) {
    rec.le(idx("(i) psi_lower_k <= psi_lower_{k+1}, k={k}", k), v(est, K::PsiLower, k), v(est, K::PsiLower, k + 1));
    rec.le(idx("(i) psi_upper_k <= psi_upper_{k+1}, k={k}", k), v(est, K::PsiUpper, k), v(est, K::PsiUpper, k + 1));
  }
  // (ii)
  rec.eq("(ii) Psi_lower_1 = psi_lower_1", v(est, K::PsiSumLower, 1), v(est, K::PsiLower, 1));
  rec.le("(ii) psi_lower_1 <= 0", v(est, K::PsiLower, 1), 0.0);
  // (iii)
  rec.eq("(iii) Psi_lower_{d-1} = -psi_upper_d", v(est, K::PsiSumLower, d - 1), -v(est, K::PsiUpper, d), lf);
  rec.eq("(iii) Psi_upper_{d-1} = -psi_lower_d", v(est, K::PsiSumUpper, d - 1), -v(est, K::PsiLower, d), lf);
  // (iv)
  rec.eq("(iv) Psi_lower_d = 0", v(est, K::PsiSumLower, d), 0.0, lf);
  rec.eq("(iv) Psi_upper_d = 0", v(est, K::PsiSumUpper, d), 0.0, lf);
  // (v), (vi) chains of partial sums
  for (K kind : {K::PsiSumLower, K::PsiSumUpper}) {
    const std::string tag = kind == K::PsiSumLower ? "lower" : "upper";
    for (int k = 1; k <= d - 2; ++k) {
      rec.le(idx("(v) (k+1)/k Psi_k <= Psi_{k+1}, ", k) + tag + idx(", k={k}", k),
             (k + 1.0) / k * v(est, kind, k), v(est, kind, k + 1));
      rec.le(idx("(vi) Psi_{k+1} <= (d-k-1)/(d-k) Psi_k, ", k) + tag + idx(", k={k}", k), v(est, kind, k + 1),
             (d - k - 1.0) / (d - k) * v(est, kind, k));
    }
    rec.le("(v) (d-1) Psi_1 <= Psi_{d-1}, " + tag, (d - 1.0) * v(est, kind, 1), v(est, kind, d - 1));
    rec.le("(vi) Psi_{d-1} <= Psi_1/(d-1), " + tag, v(est, kind, d - 1), v(est, kind, 1) / (d - 1.0));
  }
  // (vii), (viii) duality
  for (int k = 1; k <= d; ++k) {
    rec.eq(idx("(vii) psi_lower_k = -psi_upper_{d+1-k}(dual, f*), k={k}", k), v(est, K::PsiLower, k),
           -v(dual_conjugate, K::PsiUpper, d + 1 - k), lf);
    rec.eq(idx("(vii) psi_upper_k = -psi_lower_{d+1-k}(dual, f*), k={k}", k), v(est, K::PsiUpper, k),
           -v(dual_conjugate, K::PsiLower, d + 1 - k), lf);
  }
  for (int k = 1; k <= d - 1; ++k) {
    rec.eq(idx("(viii) Psi_lower_k = Psi_lower_{d-k}(dual, f*), k={k}", k), v(est, K::PsiSumLower, k),
           v(dual_conjugate, K::PsiSumLower, d - k), (k + 1.0) * lf);
    rec.eq(idx("(viii) Psi_upper_k = Psi_upper_{d-k}(dual, f*), k={k}", k), v(est, K::PsiSumUpper, k),
           v(dual_conjugate, K::PsiSumUpper, d - k), (k + 1.0) * lf);
  }
  split_chain(rec, est, dual_f, dual_conjugate);
  return r;
}

CheckReport check_split_chain(const EstimateSet& est, const EstimateSet& dual_f,
                              const EstimateSet& dual_conjugate, const RelationOptions& options) {
  double tol = 0.0, f_min = 0.0;
  CheckReport r = relation_report("split_chain", est, dual_f, dual_conjugate, options, tol, f_min);
  RelationRecorder rec(r, tol, f_min, options.finite_radius_terms);
  split_chain(rec, est, dual_f, dual_conjugate);
  return r;
}

}  // namespace mpgn
