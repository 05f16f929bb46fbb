#include "mpgn/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>

#include "mpgn/error.hpp"
#include "numeric.hpp"

namespace mpgn {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("MPGN_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

bool LatticePoint::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
}

Lattice::Lattice(const Matrix& basis, std::string label) : label_(std::move(label)) {
  if (basis.rows() < 2 || basis.rows() != basis.cols())
    throw BadParams("basis must be square with dimension >= 2");
  if (!basis.allFinite()) throw BadParams("basis has non-finite entries");
  Eigen::PartialPivLU<Matrix> lu(basis);
  double det = lu.determinant();
  if (!(std::abs(det) > kSingularThreshold))
    throw SingularBasis("|det| = " + std::to_string(std::abs(det)));
  basis_ = basis;
  if (std::abs(std::abs(det) - 1.0) > 1e-12) {
    basis_ *= std::pow(std::abs(det), -1.0 / static_cast<double>(basis.rows()));
    lu.compute(basis_);
    det = lu.determinant();
  }
  det_ = det;
  inverse_ = lu.inverse();
}

LatticePoint Lattice::point(std::span<const std::int64_t> coeffs) const {
  const int d = dim();
  LatticePoint p;
  p.coeffs.assign(coeffs.begin(), coeffs.end());
  p.coords.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    p.coords[static_cast<std::size_t>(i)] =
        detail::accurate_dot(d, [&](int j) { return basis_(i, j); }, coeffs);
  return p;
}

Lattice Lattice::with_label(std::string label) const {
  Lattice copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

Lattice normalize_unimodular(const Matrix& basis, std::string label) {
  return Lattice(basis, std::move(label));
}

Lattice dual_lattice(const Lattice& lattice) {
  std::string label = lattice.label().empty() ? "dual" : lattice.label() + "*";
  if (label.size() >= 2 && label.ends_with("**")) label.resize(label.size() - 2);
  return Lattice(lattice.inverse().transpose(), std::move(label));
}

double product_form(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double log_sum = 0.0;
  for (double xi : x) {
    if (xi == 0.0) return 0.0;
    log_sum += std::log(std::abs(xi));
  }
  return std::exp(log_sum / static_cast<double>(x.size()));
}

double sup_norm(std::span<const double> x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

double cube_gauge(const TauVector& tau, std::span<const double> v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    m = std::max(m, std::abs(v[i]) * std::exp(-tau[static_cast<int>(i)]));
  return m;
}

bool coeffs_less(const Coeffs& a, const Coeffs& b) {
  auto abs_less = [](std::int64_t x, std::int64_t y) { return std::abs(x) < std::abs(y); };
  if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), abs_less)) return true;
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end(), abs_less)) return false;
  return a < b;
}

namespace {

bool gauge_then_coeffs_less(double ga, const Coeffs& ca, double gb, const Coeffs& cb) {
  if (ga != gb) return ga < gb;
  return coeffs_less(ca, cb);
}

}  // namespace

std::vector<LatticePoint> enumerate_points(const Lattice& lattice, const TauVector& tau,
                                           double radius, std::uint64_t budget) {
  const int d = lattice.dim();
  if (tau.dim() != d) throw BadParams("tau dimension mismatch");
  if (!(radius > 0.0)) throw BadParams("radius must be positive");

  // c = B^{-1} v and |v_j| <= radius e^{tau_j}, so
  // |c_i| <= radius * sum_j |B^{-1}_{ij}| e^{tau_j}.
  std::vector<std::int64_t> bound(static_cast<std::size_t>(d));
  double box = 1.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += std::abs(lattice.inverse()(i, j)) * std::exp(tau[j]);
    double b = std::floor(radius * row * (1.0 + 1e-12) + 1e-12);
    if (b > 4e15) throw BudgetExceeded("coefficient bound overflows");
    bound[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(b);
    box *= 2.0 * b + 1.0;
  }
  if (box > static_cast<double>(budget))
    throw BudgetExceeded("coefficient box holds " + std::to_string(box) +
                         " candidates, budget " + std::to_string(budget));

  const double limit = radius * (1.0 + 1e-12);
  struct Found {
    double gauge;
    LatticePoint point;
  };
  std::vector<Found> found;
  Coeffs c(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = -bound[static_cast<std::size_t>(i)];
  while (true) {
    bool zero = std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
    if (!zero) {
      LatticePoint p = lattice.point(c);
      double g = cube_gauge(tau, p.coords);
      if (g <= limit) found.push_back({g, std::move(p)});
    }
    int i = 0;
    for (; i < d; ++i) {
      auto& ci = c[static_cast<std::size_t>(i)];
      if (ci < bound[static_cast<std::size_t>(i)]) {
        ++ci;
        break;
      }
      ci = -bound[static_cast<std::size_t>(i)];
    }
    if (i == d) break;
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return gauge_then_coeffs_less(a.gauge, a.point.coeffs, b.gauge, b.point.coeffs);
  });
  std::vector<LatticePoint> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.point));
  return out;
}

TestLatticeKind parse_test_lattice_kind(const std::string& name) {
  if (name == "integer") return TestLatticeKind::Integer;
  if (name == "totally-real-cubic") return TestLatticeKind::TotallyRealCubic;
  if (name == "unipotent") return TestLatticeKind::Unipotent;
  if (name == "random-unimodular") return TestLatticeKind::RandomUnimodular;
  if (name == "axis-sublattice") return TestLatticeKind::AxisSublattice;
  throw BadParams("unknown lattice kind '" + name + "'");
}

std::string to_string(TestLatticeKind kind) {
  switch (kind) {
    case TestLatticeKind::Integer: return "integer";
    case TestLatticeKind::TotallyRealCubic: return "totally-real-cubic";
    case TestLatticeKind::Unipotent: return "unipotent";
    case TestLatticeKind::RandomUnimodular: return "random-unimodular";
    case TestLatticeKind::AxisSublattice: return "axis-sublattice";
  }
  return "unknown";
}

Lattice make_test_lattice(TestLatticeKind kind, const TestLatticeParams& params) {
  const int d = params.dim;
  if (d < 2) throw BadParams("dimension must be at least 2");
  const std::string dim_tag = "-d" + std::to_string(d);
  const std::string seed_tag = "-s" + std::to_string(params.seed);

  switch (kind) {
    case TestLatticeKind::Integer:
      return Lattice(Matrix::Identity(d, d), "integer" + dim_tag);

    case TestLatticeKind::TotallyRealCubic: {
      if (d != 3) throw BadParams("totally-real-cubic lattices have dimension 3");
      // Roots of x^3 - 3x - 1 are 2 cos(theta) with cos(3 theta) = 1/2.
      constexpr double pi = std::numbers::pi;
      const double roots[3] = {2.0 * std::cos(pi / 9.0), 2.0 * std::cos(5.0 * pi / 9.0),
                               2.0 * std::cos(7.0 * pi / 9.0)};
      Matrix b(3, 3);
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) b(j, i) = std::pow(roots[j], i);
      return Lattice(b, "totally-real-cubic");
    }

    case TestLatticeKind::Unipotent: {
      std::vector<double> thetas = params.thetas;
      if (thetas.empty())
        for (int i = 1; i < d; ++i) thetas.push_back(std::pow(2.0, static_cast<double>(i) / d));
      if (static_cast<int>(thetas.size()) != d - 1)
        throw BadParams("unipotent lattice needs d - 1 thetas");
      Matrix b = Matrix::Identity(d, d);
      for (int i = 1; i < d; ++i) b(0, i) = thetas[static_cast<std::size_t>(i - 1)];
      return Lattice(b, "unipotent" + dim_tag);
    }

    case TestLatticeKind::RandomUnimodular: {
      std::mt19937_64 rng(params.seed);
      Matrix b(d, d);
      do {
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) b(i, j) = detail::uniform(rng, -1.0, 1.0);
      } while (std::abs(b.determinant()) < 1e-2);
      return Lattice(b, "random-unimodular" + dim_tag + seed_tag);
    }

    case TestLatticeKind::AxisSublattice: {
      std::mt19937_64 rng(params.seed);
      Matrix m(d, d);
      do {
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) m(i, j) = static_cast<double>(detail::uniform_int(rng, -2, 2));
      } while (std::abs(m.determinant()) < 0.5);
      std::vector<double> diag = params.diagonal;
      if (diag.empty())
        for (int i = 0; i < d; ++i) diag.push_back(std::exp(detail::uniform(rng, -1.0, 1.0)));
      if (static_cast<int>(diag.size()) != d) throw BadParams("diagonal needs d entries");
      for (double x : diag)
        if (!(x != 0.0 && std::isfinite(x))) throw BadParams("diagonal entries must be nonzero");
      for (int i = 0; i < d; ++i) m.row(i) *= diag[static_cast<std::size_t>(i)];
      return Lattice(m, "axis-sublattice" + dim_tag + seed_tag);
    }
  }
  throw BadParams("unhandled lattice kind");
}

}  // namespace mpgn
