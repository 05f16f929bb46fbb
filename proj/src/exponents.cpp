#include "mpgn/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "mpgn/error.hpp"
#include "parallel.hpp"

namespace mpgn {

PsiValues psi_values(const MinimaProfile& profile, const GaugeFunction& f) {
  const double ft = f(profile.tau);
  if (!(ft > 0.0)) throw ZeroGauge("f(tau) = 0; psi is undefined at tau = 0");
  PsiValues out;
  double sum = 0.0;
  for (double l : profile.L) {
    out.psi.push_back(l / ft);
    sum += l / ft;
    out.Psi.push_back(sum);
  }
  return out;
}

PsiValues psi_values(const Lattice& lattice, const TauVector& tau, const GaugeFunction& f,
                     const EngineOptions& engine) {
  if (!(f(tau) > 0.0)) throw ZeroGauge("f(tau) = 0; psi is undefined at tau = 0");
  return psi_values(successive_minima(lattice, tau, engine), f);
}

std::vector<double> RadiusSchedule::radii() const {
  std::vector<double> r;
  double x = r0;
  for (int i = 0; i < count; ++i, x *= ratio) r.push_back(x);
  return r;
}

RadiusSchedule RadiusSchedule::parse(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) )
    throw BadParams("radius schedule must be r0:ratio:count");
  RadiusSchedule s;
  try {
    s.r0 = std::stod(a);
    s.ratio = std::stod(b);
    s.count = std::stoi(c);
  } catch (const std::logic_error&) {
    throw BadParams("radius schedule must be r0:ratio:count");
  }
  return s;
}

namespace {

double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

TauVector unit_direction(std::vector<double> v) {
  TauVector t = TauVector::projected(std::move(v));
  double n = t.sup_norm();
  std::vector<double> c(t.components().begin(), t.components().end());
  for (double& x : c) x /= n;
  return TauVector::projected(std::move(c));
}

}  // namespace

std::vector<TauVector> scan_directions(int dim, int count) {
  if (dim < 2 || dim > static_cast<int>(std::size(kPrimes))) throw BadParams("unsupported dimension");
  if (count < 0) throw BadParams("direction count must be non-negative");
  std::vector<TauVector> out;
  for (std::uint64_t n = 1; static_cast<int>(out.size()) < 2 * count; ++n) {
    std::vector<double> y(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) y[static_cast<std::size_t>(i)] = 2.0 * halton(n, kPrimes[i]) - 1.0;
    TauVector p = TauVector::projected(y);
    if (p.sup_norm() < 0.05) continue;
    TauVector u = unit_direction(std::move(y));
    out.push_back(-u);
    out.push_back(std::move(u));
  }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (i == j) continue;
      std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      e[static_cast<std::size_t>(j)] = -1.0;
      out.emplace_back(std::move(e));
    }
  return out;
}

ScanConfig ScanConfig::standard(int dim, int direction_count, RadiusSchedule schedule) {
  ScanConfig cfg;
  cfg.directions = scan_directions(dim, direction_count);
  cfg.schedule = schedule;
  return cfg;
}

void ScanConfig::validate(int dim) const {
  if (directions.empty()) throw BadParams("scan needs at least one direction");
  for (const auto& u : directions) {
    if (u.dim() != dim) throw BadParams("direction dimension mismatch");
    if (std::abs(u.sup_norm() - 1.0) > 1e-12) throw BadParams("directions must have sup-norm 1");
  }
  if (!(schedule.r0 > 0.0)) throw BadParams("r0 must be positive");
  if (!(schedule.ratio > 1.0)) throw BadParams("radius ratio must exceed 1");
  if (schedule.count < 2) throw BadParams("radius count must be at least 2");
  if (!(shell_fraction > 0.0 && shell_fraction <= 1.0)) throw BadParams("shell fraction must be in (0, 1]");
}

int ScanConfig::shell_start_index() const {
  int n = static_cast<int>(std::ceil(schedule.count * shell_fraction - 1e-12));
  n = std::clamp(n, 1, schedule.count);
  return schedule.count - n;
}

std::vector<ScanSample> scan_profiles(const Lattice& lattice, const ScanConfig& cfg) {
  cfg.validate(lattice.dim());
  const auto radii = cfg.schedule.radii();
  const std::size_t nd = cfg.directions.size();
  std::vector<ScanSample> samples(radii.size() * nd);
  detail::parallel_for(samples.size(), cfg.threads, [&](std::size_t idx) {
    ScanSample& s = samples[idx];
    s.radius_index = static_cast<int>(idx / nd);
    s.direction_index = static_cast<int>(idx % nd);
    s.radius = radii[static_cast<std::size_t>(s.radius_index)];
    const auto& u = cfg.directions[static_cast<std::size_t>(s.direction_index)];
    std::vector<double> c(u.components().begin(), u.components().end());
    for (double& x : c) x *= s.radius;
    s.profile = successive_minima(lattice, TauVector::projected(std::move(c)), cfg.engine);
  });
  return samples;
}

std::string to_string(ExponentKind kind) {
  switch (kind) {
    case ExponentKind::PsiLower: return "psi_lower";
    case ExponentKind::PsiUpper: return "psi_upper";
    case ExponentKind::PsiSumLower: return "Psi_lower";
    case ExponentKind::PsiSumUpper: return "Psi_upper";
  }
  return "unknown";
}

bool is_lower(ExponentKind kind) {
  return kind == ExponentKind::PsiLower || kind == ExponentKind::PsiSumLower;
}

double ExponentEstimate::oscillation() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& t : trace) {
    if (t.radius < shell_start) continue;
    lo = std::min(lo, t.value);
    hi = std::max(hi, t.value);
  }
  return hi >= lo ? hi - lo : 0.0;
}

const ExponentEstimate& EstimateSet::get(ExponentKind kind, int k) const {
  for (const auto& e : items)
    if (e.kind == kind && e.k == k) return e;
  throw MissingEstimates(to_string(kind) + " for k = " + std::to_string(k) + " on " + lattice);
}

double EstimateSet::max_oscillation() const {
  double m = 0.0;
  for (const auto& e : items) m = std::max(m, e.oscillation());
  return m;
}

EstimateSet estimates_from_scan(const std::vector<ScanSample>& samples, const std::string& lattice,
                                const GaugeFunction& f, const ScanConfig& cfg) {
  if (samples.empty()) throw InsufficientSamples("empty scan");
  const int d = samples.front().profile.dim();
  const int nr = cfg.schedule.count;
  const int shell = cfg.shell_start_index();
  const auto radii = cfg.schedule.radii();

  std::size_t shell_samples = 0;
  for (const auto& s : samples) shell_samples += s.radius_index >= shell;
  if (shell_samples < 10)
    throw InsufficientSamples("asymptotic shell holds " + std::to_string(shell_samples) + " samples");

  std::vector<PsiValues> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(psi_values(s.profile, f));

  EstimateSet set{lattice, f, d, INFINITY, {}};
  for (const auto& smp : samples)
    if (smp.radius_index >= shell) set.shell_f_min = std::min(set.shell_f_min, f(smp.profile.tau));
  const ExponentKind kinds[] = {ExponentKind::PsiLower, ExponentKind::PsiUpper, ExponentKind::PsiSumLower,
                                ExponentKind::PsiSumUpper};
  for (int k = 1; k <= d; ++k) {
    for (ExponentKind kind : kinds) {
      const bool lower = is_lower(kind);
      const bool partial_sum = kind == ExponentKind::PsiSumLower || kind == ExponentKind::PsiSumUpper;
      auto better = [lower](double a, double b) { return lower ? a < b : a > b; };

      // Per-radius extreme with the first sample attaining it.
      std::vector<double> extreme(static_cast<std::size_t>(nr), lower ? INFINITY : -INFINITY);
      std::vector<std::size_t> arg(static_cast<std::size_t>(nr), samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& v = partial_sum ? values[i].Psi : values[i].psi;
        double x = v[static_cast<std::size_t>(k - 1)];
        auto r = static_cast<std::size_t>(samples[i].radius_index);
        if (arg[r] == samples.size() || better(x, extreme[r])) {
          extreme[r] = x;
          arg[r] = i;
        }
      }

      ExponentEstimate est;
      est.kind = kind;
      est.k = k;
      est.f = f;
      est.lattice = lattice;
      est.shell_start = radii[static_cast<std::size_t>(shell)];
      std::vector<TracePoint> trace(static_cast<std::size_t>(nr));
      double tail = lower ? INFINITY : -INFINITY;
      std::size_t tail_arg = samples.size();
      std::size_t shell_arg = samples.size();
      for (int r = nr - 1; r >= 0; --r) {
        auto ru = static_cast<std::size_t>(r);
        // Ties move the witness inward, to the smallest radius attaining the tail value.
        if (arg[ru] != samples.size() && (tail_arg == samples.size() || !better(tail, extreme[ru]))) {
          tail = extreme[ru];
          tail_arg = arg[ru];
        }
        trace[ru] = {radii[ru], tail};
        if (r == shell) shell_arg = tail_arg;
      }
      est.trace = std::move(trace);
      est.value = est.trace[static_cast<std::size_t>(shell)].value;
      const auto& wt = samples[shell_arg].profile.tau.components();
      est.witness_tau.assign(wt.begin(), wt.end());
      set.items.push_back(std::move(est));
    }
  }
  return set;
}

EstimateSet estimate_exponents(const Lattice& lattice, const GaugeFunction& f, const ScanConfig& cfg) {
  return estimates_from_scan(scan_profiles(lattice, cfg), lattice.label(), f, cfg);
}

namespace {

struct Box {
  TauVector tau;
  double radius;
};

// Boxes prod [-a_i, a_i] with a_i = eps e^{k_i step}, eps = N^{-(d-1)},
// sum k_i fixed. Every x with |x| <= N and Pi(x) <= 1 lies in one of them
// (coordinates below eps are clamped up to eps), and each box has volume
// at most 2^d e^{d step}.
std::vector<Box> hyperbolic_cover(int d, double norm_bound, double step) {
  const double log_n = std::log(norm_bound);
  const double log_floor = -(d - 1) * log_n;
  const int top = static_cast<int>(std::ceil((log_n - log_floor) / step));
  const int total = static_cast<int>(std::floor(d + d * (d - 1) * log_n / step + 1e-9));
  if (d * top < total) throw BadParams("grid cannot reach the product budget");
  std::vector<Box> boxes;
  std::vector<int> k(static_cast<std::size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int i, int remaining) {
    if (i == d - 1) {
      if (remaining > top) return;
      k[static_cast<std::size_t>(i)] = remaining;
      std::vector<double> tau(static_cast<std::size_t>(d));
      double mean = 0.0;
      for (int j = 0; j < d; ++j) {
        tau[static_cast<std::size_t>(j)] = log_floor + step * k[static_cast<std::size_t>(j)];
        mean += tau[static_cast<std::size_t>(j)] / d;
      }
      for (double& t : tau) t -= mean;
      boxes.push_back({TauVector::projected(std::move(tau)), std::exp(mean) * (1.0 + 1e-9)});
      return;
    }
    for (int ki = 0; ki <= std::min(top, remaining); ++ki) {
      k[static_cast<std::size_t>(i)] = ki;
      rec(i + 1, remaining - ki);
    }
  };
  rec(0, total);
  return boxes;
}

void canonical_sign(LatticePoint& p) {
  auto it = std::find_if(p.coords.begin(), p.coords.end(), [](double x) { return x != 0.0; });
  if (it != p.coords.end() && *it < 0) {
    for (auto& c : p.coeffs) c = -c;
    for (auto& x : p.coords) x = -x;
  }
}

// Shell points (sqrt(N) <= |v| <= N, Pi(v) <= 1) of one box.
std::vector<LatticePoint> box_points(const Lattice& lattice, const Box& box, double norm_bound,
                                     const VectorScanOptions& options, bool& dense) {
  EngineOptions engine = options.engine;
  engine.budget = options.box_budget;
  std::vector<LatticePoint> pts;
  dense = false;
  try {
    pts = points_in_box(lattice, box.tau, box.radius, engine);
  } catch (const BudgetExceeded&) {
    dense = true;
    for (auto& w : successive_minima(lattice, box.tau, options.engine).witnesses)
      if (cube_gauge(box.tau, w.coords) <= box.radius) pts.push_back(std::move(w));
  }
  std::vector<LatticePoint> out;
  for (auto& p : pts) {
    double n = sup_norm(p.coords);
    if (n * n < norm_bound * (1.0 - 1e-12) || n > norm_bound) continue;
    if (product_form(p.coords) > 1.0) continue;
    canonical_sign(p);
    out.push_back(std::move(p));
  }
  return out;
}

void check_scan_options(double norm_bound, const VectorScanOptions& options) {
  if (!(norm_bound > 1.0) || !std::isfinite(norm_bound)) throw BadParams("norm bound must exceed 1");
  if (!(options.grid_step > 0.0)) throw BadParams("grid step must be positive");
  if (options.bins < 1) throw BadParams("need at least one bin");
  if (options.box_budget < 1) throw BadParams("box budget must be positive");
}

// Streaming reduction of the shell samples: per-bin minimum of the psi-side
// value, the omega supremum, and a capped count of distinct points.
struct ShellSummary {
  std::vector<double> bin_min;
  std::vector<std::optional<LatticePoint>> bin_arg;
  double omega = 0.0;  // may be +inf
  std::vector<Coeffs> distinct;
  int dense_boxes = 0;
};

constexpr std::size_t kMinSamples = 10;

ShellSummary summarize_shell(const Lattice& lattice, double norm_bound, const VectorScanOptions& options) {
  check_scan_options(norm_bound, options);
  const auto boxes = hyperbolic_cover(lattice.dim(), norm_bound, options.grid_step);
  const double lo = 0.5 * std::log(norm_bound);
  const double width = (std::log(norm_bound) - lo) / options.bins;
  const auto nb = static_cast<std::size_t>(options.bins);

  auto empty = [&] {
    ShellSummary s;
    s.bin_min.assign(nb, INFINITY);
    s.bin_arg.resize(nb);
    return s;
  };
  std::vector<ShellSummary> per_box(boxes.size());
  detail::parallel_for(boxes.size(), 0, [&](std::size_t i) {
    ShellSummary s = empty();
    bool dense = false;
    for (auto& p : box_points(lattice, boxes[i], norm_bound, options, dense)) {
      const double n = sup_norm(p.coords);
      const double pi = product_form(p.coords);
      double value = -1.0, omega = INFINITY;
      if (pi > 0.0) {
        const double lp = std::log(pi), ln = std::log(n);
        value = lp / (ln - lp);
        omega = -lp / ln;
      }
      auto b = static_cast<std::size_t>(std::clamp((std::log(n) - lo) / width, 0.0, options.bins - 1.0));
      if (value < s.bin_min[b]) {
        s.bin_min[b] = value;
        s.bin_arg[b] = p;
      }
      s.omega = std::max(s.omega, omega);
      if (s.distinct.size() < kMinSamples) s.distinct.push_back(std::move(p.coeffs));
    }
    s.dense_boxes = dense;
    per_box[i] = std::move(s);
  });

  // Merge in box order so ties resolve identically for any thread count.
  ShellSummary all = empty();
  for (auto& s : per_box) {
    for (std::size_t b = 0; b < nb; ++b)
      if (s.bin_min[b] < all.bin_min[b]) {
        all.bin_min[b] = s.bin_min[b];
        all.bin_arg[b] = std::move(s.bin_arg[b]);
      }
    all.omega = std::max(all.omega, s.omega);
    all.dense_boxes += s.dense_boxes;
    for (auto& c : s.distinct)
      if (all.distinct.size() < kMinSamples && std::find(all.distinct.begin(), all.distinct.end(), c) == all.distinct.end())
        all.distinct.push_back(std::move(c));
  }
  if (all.distinct.size() < kMinSamples)
    throw InsufficientSamples("fewer than " + std::to_string(kMinSamples) +
                              " points with Pi(v) <= 1 and sqrt(N) <= |v| <= N");
  return all;
}

}  // namespace

ProductScan small_product_points(const Lattice& lattice, double norm_bound, const VectorScanOptions& options) {
  check_scan_options(norm_bound, options);
  const auto boxes = hyperbolic_cover(lattice.dim(), norm_bound, options.grid_step);
  std::vector<std::vector<LatticePoint>> per_box(boxes.size());
  std::vector<char> dense(boxes.size(), 0);
  detail::parallel_for(boxes.size(), 0, [&](std::size_t i) {
    bool is_dense = false;
    per_box[i] = box_points(lattice, boxes[i], norm_bound, options, is_dense);
    dense[i] = is_dense;
  });
  ProductScan scan;
  scan.boxes = static_cast<int>(boxes.size());
  scan.dense_boxes = static_cast<int>(std::count(dense.begin(), dense.end(), 1));
  for (auto& v : per_box)
    for (auto& p : v) scan.points.push_back(std::move(p));
  auto& found = scan.points;
  std::sort(found.begin(), found.end(), [](const LatticePoint& a, const LatticePoint& b) {
    double na = sup_norm(a.coords), nb = sup_norm(b.coords);
    if (na != nb) return na < nb;
    return coeffs_less(a.coeffs, b.coeffs);
  });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const LatticePoint& a, const LatticePoint& b) { return a.coeffs == b.coeffs; }),
              found.end());
  return scan;
}

ExponentEstimate estimate_psi1_vector_scan(const Lattice& lattice, double norm_bound,
                                           const VectorScanOptions& options) {
  ShellSummary shell = summarize_shell(lattice, norm_bound, options);
  const double lo = 0.5 * std::log(norm_bound);
  const double width = (std::log(norm_bound) - lo) / options.bins;

  ExponentEstimate est;
  est.kind = ExponentKind::PsiSumLower;
  est.k = 1;
  est.f = GaugeFunction::sup_plus();
  est.lattice = lattice.label();
  est.shell_start = std::exp(lo);

  // Tail infimum from the outermost bin inward.
  double tail = INFINITY;
  const LatticePoint* best = nullptr;
  for (int b = options.bins - 1; b >= 0; --b) {
    const auto bu = static_cast<std::size_t>(b);
    if (shell.bin_min[bu] <= tail && shell.bin_arg[bu]) {
      tail = shell.bin_min[bu];
      best = &*shell.bin_arg[bu];
    }
    if (best) est.trace.push_back({std::exp(lo + b * width), tail});
  }
  std::reverse(est.trace.begin(), est.trace.end());
  est.value = tail;
  if (best && product_form(best->coords) > 0.0) {
    auto t = tau_of_vector(*best);
    est.witness_tau.assign(t.components().begin(), t.components().end());
  }
  return est;
}

ExtendedReal estimate_omega(const Lattice& lattice, double norm_bound, const VectorScanOptions& options) {
  ShellSummary shell = summarize_shell(lattice, norm_bound, options);
  if (std::isinf(shell.omega)) return ExtendedReal::positive_infinity();
  return ExtendedReal::finite(shell.omega);
}

ExtendedReal omega_psi_convert(ExtendedReal x, ConversionDirection direction) {
  if (direction == ConversionDirection::OmegaToPsi) {
    if (x.is_positive_infinity()) return ExtendedReal::finite(-1.0);
    if (!x.is_finite() || x.value() < 0.0) throw OutOfDomain("omega must lie in [0, +inf]");
    double w = x.value();
    return ExtendedReal::finite(w == 0.0 ? 0.0 : -w / (1.0 + w));
  }
  if (!x.is_finite() || x.value() < -1.0 || x.value() > 0.0)
    throw OutOfDomain("lower Psi_1 must lie in [-1, 0]");
  double p = x.value();
  if (p == -1.0) return ExtendedReal::positive_infinity();
  return ExtendedReal::finite(p == 0.0 ? 0.0 : -p / (1.0 + p));
}

}  // namespace mpgn
