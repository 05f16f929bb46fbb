#include "mpgn/minimal_systems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpgn/error.hpp"
#include "parallel.hpp"

namespace mpgn {
namespace {

constexpr double kBoxMargin = 1e-12;

bool coords_less(const LatticePoint& a, const LatticePoint& b) {
  return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
}

bool first_coord_negative(const LatticePoint& p) {
  for (double x : p.coords)
    if (x != 0.0) return x < 0.0;
  return false;
}

LatticePoint negated(LatticePoint p) {
  for (auto& c : p.coeffs) c = -c;
  for (auto& x : p.coords) x = -x;
  return p;
}

__int128 det3(const Coeffs& a, const Coeffs& b, const Coeffs& c) {
  auto m = [](std::int64_t x) { return static_cast<__int128>(x); };
  return m(a[0]) * (m(b[1]) * m(c[2]) - m(b[2]) * m(c[1])) - m(a[1]) * (m(b[0]) * m(c[2]) - m(b[2]) * m(c[0])) +
         m(a[2]) * (m(b[0]) * m(c[1]) - m(b[1]) * m(c[0]));
}

double coefficient_det(const VectorSystem& sys) {
  const int d = sys.dim();
  Matrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      m(i, j) = static_cast<double>(sys.points[static_cast<std::size_t>(j)].coeffs[static_cast<std::size_t>(i)]);
  return m.determinant();
}

}  // namespace

VectorSystem VectorSystem::from_points(std::vector<LatticePoint> points) {
  if (points.empty()) throw BadParams("empty vector system");
  const int d = points.front().dim();
  if (static_cast<int>(points.size()) > d) throw BadParams("a vector system has at most d vectors");
  VectorSystem sys;
  sys.envelope.assign(static_cast<std::size_t>(d), 0.0);
  Matrix m(d, static_cast<int>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].dim() != d) throw BadParams("vector system dimension mismatch");
    for (int i = 0; i < d; ++i) {
      double x = points[j].coords[static_cast<std::size_t>(i)];
      m(i, static_cast<int>(j)) = x;
      sys.envelope[static_cast<std::size_t>(i)] = std::max(sys.envelope[static_cast<std::size_t>(i)], std::abs(x));
    }
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (top > 0.0 && sv(i) > kRankThreshold * top) ++sys.rank;
  sys.points = std::move(points);
  return sys;
}

double VectorSystem::envelope_volume() const {
  return std::accumulate(envelope.begin(), envelope.end(), 1.0, std::multiplies<>());
}

void VectorSystem::normalize() {
  for (auto& p : points)
    if (first_coord_negative(p)) p = negated(std::move(p));
  std::sort(points.begin(), points.end(), coords_less);
}

MinimalityResult is_minimal_system(const Lattice& lattice, const VectorSystem& sys, const EngineOptions& engine) {
  const int d = lattice.dim();
  if (sys.dim() != d) throw BadParams("vector system dimension mismatch");
  if (std::any_of(sys.envelope.begin(), sys.envelope.end(), [](double m) { return !(m > 0.0); })) return {};
  // The open box is the deformed cube at tau_i = log m_i - mean, dilated by
  // exp(mean); it is empty iff lambda_1 there reaches that dilation.
  std::vector<double> logs;
  for (double m : sys.envelope) logs.push_back(std::log(m));
  const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / d;
  TauVector tau = TauVector::projected(logs);
  const double radius = std::exp(mean);
  EngineOptions plain = engine;
  plain.perturb_index = 0;
  MinimaProfile prof = successive_minima(lattice, tau, plain);
  if (prof.lambdas.front() < radius * (1.0 - kBoxMargin)) return {false, prof.witnesses.front()};
  return {};
}

std::vector<VectorSystem> find_minkowski_bases(const Lattice& lattice, double search_radius,
                                               const EngineOptions& engine) {
  if (lattice.dim() != 3) throw BadParams("Minkowski basis search is implemented for d = 3");
  if (!(search_radius > 0.0)) throw BadParams("search radius must be positive");
  std::vector<LatticePoint> pts;
  for (auto& p : points_in_box(lattice, TauVector::zero(3), search_radius, engine))
    if (!first_coord_negative(p)) pts.push_back(std::move(p));

  std::vector<char> minimal(pts.size());
  detail::parallel_for(pts.size(), 0, [&](std::size_t i) {
    minimal[i] = is_minimal_system(lattice, VectorSystem::from_points({pts[i]}), engine).minimal;
  });
  std::vector<LatticePoint> cand;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (minimal[i]) cand.push_back(std::move(pts[i]));

  const std::size_t n = cand.size();
  std::vector<std::vector<VectorSystem>> found(n);
  detail::parallel_for(n, 0, [&](std::size_t a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      auto pair = VectorSystem::from_points({cand[a], cand[b]});
      if (pair.rank < 2 || !is_minimal_system(lattice, pair, engine).minimal) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        __int128 det = det3(cand[a].coeffs, cand[b].coeffs, cand[c].coeffs);
        if (det != 1 && det != -1) continue;
        auto sys = VectorSystem::from_points({cand[a], cand[b], cand[c]});
        if (!is_minimal_system(lattice, sys, engine).minimal) continue;
        sys.normalize();
        found[a].push_back(std::move(sys));
      }
    }
  });

  std::vector<VectorSystem> out;
  for (auto& f : found)
    for (auto& s : f) out.push_back(std::move(s));
  std::sort(out.begin(), out.end(), [](const VectorSystem& x, const VectorSystem& y) {
    double vx = x.envelope_volume(), vy = y.envelope_volume();
    if (vx != vy) return vx < vy;
    for (std::size_t i = 0; i < x.points.size(); ++i)
      if (x.points[i].coeffs != y.points[i].coeffs) return coeffs_less(x.points[i].coeffs, y.points[i].coeffs);
    return false;
  });
  return out;
}

EnvelopeGap envelope_volume_gap(const Lattice& lattice, const std::vector<VectorSystem>& systems) {
  const int d = lattice.dim();
  EnvelopeGap gap;
  gap.floor = 1.0 / std::tgamma(d + 1.0);
  gap.min_volume = INFINITY;
  for (const auto& s : systems) {
    if (s.dim() != d || s.rank < d || static_cast<int>(s.points.size()) != d)
      throw BadParams("envelope volume gap needs rank-d systems");
    // The lattice is unimodular, so |det(v_1..v_d)| is the coefficient determinant.
    double vol = s.envelope_volume() / std::abs(coefficient_det(s));
    gap.min_volume = std::min(gap.min_volume, vol);
    ++gap.systems;
  }
  gap.above_floor = gap.systems > 0 && gap.min_volume >= gap.floor * (1.0 - 1e-9);
  return gap;
}

std::optional<LatticePoint> find_axis_point(const Lattice& lattice, double radius, const EngineOptions& engine) {
  const int d = lattice.dim();
  if (!(radius > 0.0)) throw BadParams("radius must be positive");
  const double thin = 1e-9 * radius;
  for (int axis = 0; axis < d; ++axis) {
    std::vector<double> logs(static_cast<std::size_t>(d), std::log(thin));
    logs[static_cast<std::size_t>(axis)] = std::log(radius);
    const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / d;
    auto pts = points_in_box(lattice, TauVector::projected(logs), std::exp(mean), engine);
    if (!pts.empty()) {
      LatticePoint p = pts.back();
      return first_coord_negative(p) ? negated(std::move(p)) : p;
    }
  }
  return std::nullopt;
}

std::pair<double, double> degeneracy_window(const GaugeFunction& f, int dim) {
  const double dm1 = dim - 1.0;
  switch (f.kind()) {
    case GaugeKind::SupPlus: return {-1.0, dm1};
    case GaugeKind::Sup: return {-1.0, 1.0};
    case GaugeKind::SupMinus: return {-dm1, 1.0};
    case GaugeKind::WeightedMax: break;
  }
  throw BadParams("degeneracy window is defined for sup-type gauges only");
}

CheckReport d3_degeneracy_check(const Lattice& lattice, const EstimateSet& est, const EstimateSet& dual_conjugate,
                                const DegeneracyOptions& options) {
  if (lattice.dim() != 3 || est.dim != 3 || dual_conjugate.dim != 3)
    throw BadParams("degeneracy relations are stated for d = 3");
  if (!(dual_conjugate.f == est.f.conjugate()))
    throw BadParams("dual estimates must use the conjugate gauge " + est.f.conjugate().name());
  const auto [c1, c2] = degeneracy_window(est.f, 3);
  if (auto p = find_axis_point(lattice, options.axis_radius, options.engine)) {
    std::string coeffs;
    for (auto c : p->coeffs) coeffs += (coeffs.empty() ? "" : ",") + std::to_string(c);
    throw NotIrrational("lattice point (" + coeffs + ") on a coordinate axis; the exponents are those of Z^3");
  }

  const double tol = options.relation.tol ? *options.relation.tol
                                          : default_relation_tolerance({&est, &dual_conjugate});
  if (!(tol >= 0.0)) throw BadParams("tolerance must be non-negative");
  const double f_min = std::min(est.shell_f_min, dual_conjugate.shell_f_min);
  const double lf = std::log(6.0);
  const MinimaProfile origin = successive_minima(lattice, TauVector::zero(3), options.engine);
  const double l1_0 = origin.L.front(), l3_0 = origin.L.back();

  CheckReport r;
  r.check_name = "d3_degeneracy";
  r.lattices = {est.lattice, dual_conjugate.lattice};
  r.sample_count = 2;
  r.constants = {{"tol", tol}, {"f_min", f_min}, {"log d!", lf}, {"c_1", c1}, {"c_2", c2},
                 {"L_1(0)", l1_0}, {"L_d(0)", l3_0}};
  r.notes.push_back("no axis point within sup-norm " + std::to_string(options.axis_radius));

  auto allowance = [&](double constant) {
    double a = tol;
    if (options.relation.finite_radius_terms && constant > 0.0) a += constant / f_min;
    return a;
  };
  auto le = [&](const std::string& name, double lhs, double rhs, double constant = 0.0) {
    r.record(name, rhs - lhs + allowance(constant));
  };
  auto eq = [&](const std::string& name, double a, double b, double constant = 0.0) {
    r.record(name, allowance(constant) - std::abs(a - b));
  };

  using K = ExponentKind;
  auto v = [](const EstimateSet& e, K kind, int k) { return e.value(kind, k); };
  eq("psi_upper_1 = 0", v(est, K::PsiUpper, 1), 0.0);
  eq("Psi_upper_1 = 0", v(est, K::PsiSumUpper, 1), 0.0);
  eq("Psi_upper_2 = 0", v(est, K::PsiSumUpper, 2), 0.0);
  eq("psi_lower_3 = 0", v(est, K::PsiLower, 3), 0.0, lf);
  eq("Psi_upper_3 = 0", v(est, K::PsiSumUpper, 3), 0.0, lf);
  eq("Psi_lower_3 = 0", v(est, K::PsiSumLower, 3), 0.0, lf);
  eq("Psi_lower_1 = psi_lower_1", v(est, K::PsiSumLower, 1), v(est, K::PsiLower, 1));
  eq("psi_upper_3 = -Psi_lower_2", v(est, K::PsiUpper, 3), -v(est, K::PsiSumLower, 2), lf);

  le("c_1 <= psi_lower_1", c1, v(est, K::PsiLower, 1), std::abs(l1_0));
  le("psi_lower_1 <= psi_lower_2", v(est, K::PsiLower, 1), v(est, K::PsiLower, 2));
  le("psi_lower_2 <= 0", v(est, K::PsiLower, 2), 0.0);
  le("0 <= psi_upper_2", 0.0, v(est, K::PsiUpper, 2));
  le("psi_upper_2 <= psi_upper_3", v(est, K::PsiUpper, 2), v(est, K::PsiUpper, 3));
  le("psi_upper_3 <= c_2", v(est, K::PsiUpper, 3), c2, l3_0);

  eq("psi_lower_1 = -psi_upper_3(dual, f*)", v(est, K::PsiLower, 1), -v(dual_conjugate, K::PsiUpper, 3), lf);
  eq("psi_upper_1 = -psi_lower_3(dual, f*)", v(est, K::PsiUpper, 1), -v(dual_conjugate, K::PsiLower, 3), lf);
  eq("psi_lower_2 = -psi_upper_2(dual, f*)", v(est, K::PsiLower, 2), -v(dual_conjugate, K::PsiUpper, 2), lf);
  eq("psi_upper_2 = -psi_lower_2(dual, f*)", v(est, K::PsiUpper, 2), -v(dual_conjugate, K::PsiLower, 2), lf);
  return r;
}

}  // namespace mpgn
