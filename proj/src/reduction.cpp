#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mpgn/error.hpp"
#include "numeric.hpp"

namespace mpgn::detail {
namespace {

using i128 = __int128;

constexpr int kMaxPasses = 32;
constexpr long kMaxSwapsPerPass = 200000;

std::int64_t checked_narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw BudgetExceeded("integer transform overflows 64 bits; |tau| beyond the feasible envelope");
  return static_cast<std::int64_t>(v);
}

// Rebuilds row_scale * basis * transform column by column.
Matrix scaled_basis(const Lattice& lattice, std::span<const double> row_scale,
                    const IntMatrix& transform) {
  const int d = lattice.dim();
  Matrix m(d, d);
  Coeffs col(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = transform[static_cast<std::size_t>(i * d + j)];
    LatticePoint p = lattice.point(col);
    for (int i = 0; i < d; ++i) m(i, j) = p.coords[static_cast<std::size_t>(i)] * row_scale[static_cast<std::size_t>(i)];
  }
  return m;
}

struct GramSchmidt {
  Matrix mu;               // mu(k, j) for j < k
  std::vector<double> bn;  // squared norms of orthogonalized vectors
};

GramSchmidt gram_schmidt(const Matrix& b) {
  const int d = static_cast<int>(b.cols());
  GramSchmidt gs{Matrix::Zero(d, d), std::vector<double>(static_cast<std::size_t>(d))};
  Matrix star = b;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < k; ++j) {
      double bj = gs.bn[static_cast<std::size_t>(j)];
      // Modified Gram-Schmidt: project the running residual.
      double m = bj > 0 ? star.col(j).dot(star.col(k)) / bj : 0.0;
      gs.mu(k, j) = m;
      star.col(k) -= m * star.col(j);
    }
    gs.bn[static_cast<std::size_t>(k)] = star.col(k).squaredNorm();
  }
  return gs;
}

// One LLL pass in floating point. Returns the accumulated integer transform
// (identity when the input was already reduced). No swap crosses `barrier`.
IntMatrix lll_pass(Matrix b, double delta, int barrier) {
  const int d = static_cast<int>(b.cols());
  IntMatrix t(static_cast<std::size_t>(d * d), 0);
  for (int i = 0; i < d; ++i) t[static_cast<std::size_t>(i * d + i)] = 1;
  auto at = [&](int i, int j) -> std::int64_t& { return t[static_cast<std::size_t>(i * d + j)]; };

  GramSchmidt gs = gram_schmidt(b);
  int k = 1;
  long swaps = 0;
  while (k < d) {
    for (int j = k - 1; j >= 0; --j) {
      double q = std::nearbyint(gs.mu(k, j));
      if (q == 0.0) continue;
      if (std::abs(q) > 1e15) throw BudgetExceeded("size reduction quotient too large");
      auto qi = static_cast<std::int64_t>(q);
      b.col(k) -= q * b.col(j);
      for (int i = 0; i < d; ++i) at(i, k) = checked_narrow(static_cast<i128>(at(i, k)) - static_cast<i128>(qi) * at(i, j));
      for (int i = 0; i < j; ++i) gs.mu(k, i) -= q * gs.mu(j, i);
      gs.mu(k, j) -= q;
    }
    const auto sk = static_cast<std::size_t>(k);
    if (k == barrier || gs.bn[sk] >= (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.bn[sk - 1]) {
      ++k;
      continue;
    }
    b.col(k).swap(b.col(k - 1));
    for (int i = 0; i < d; ++i) std::swap(at(i, k), at(i, k - 1));
    gs = gram_schmidt(b);
    k = std::max(k - 1, 1);
    if (++swaps > kMaxSwapsPerPass) break;
  }
  return t;
}

bool is_identity(const IntMatrix& t, int d) {
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (t[static_cast<std::size_t>(i * d + j)] != (i == j ? 1 : 0)) return false;
  return true;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, int d) {
  IntMatrix c(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      i128 s = 0;
      for (int k = 0; k < d; ++k)
        s += static_cast<i128>(a[static_cast<std::size_t>(i * d + k)]) * b[static_cast<std::size_t>(k * d + j)];
      c[static_cast<std::size_t>(i * d + j)] = checked_narrow(s);
    }
  return c;
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

ScaledReduction reduce_scaled(const Lattice& lattice, std::span<const double> row_scale,
                              double delta) {
  const int d = lattice.dim();
  ScaledReduction red;
  red.dim = d;
  red.row_scale.assign(row_scale.begin(), row_scale.end());
  red.transform.assign(static_cast<std::size_t>(d * d), 0);
  for (int i = 0; i < d; ++i) red.transform[static_cast<std::size_t>(i * d + i)] = 1;
  reduce_in_place(lattice, red, delta, 0);
  return red;
}

void reduce_in_place(const Lattice& lattice, ScaledReduction& red, double delta, int barrier) {
  const int d = red.dim;
  red.reduced = scaled_basis(lattice, red.row_scale, red.transform);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    IntMatrix t = lll_pass(red.reduced, delta, barrier);
    if (is_identity(t, d)) break;
    red.transform = multiply(red.transform, t, d);
    red.reduced = scaled_basis(lattice, red.row_scale, red.transform);
  }
}

Coeffs apply_transform(const ScaledReduction& red, std::span<const std::int64_t> x) {
  const int d = red.dim;
  Coeffs c(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    i128 s = 0;
    for (int j = 0; j < d; ++j)
      s += static_cast<i128>(red.transform[static_cast<std::size_t>(i * d + j)]) * x[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(i)] = checked_narrow(s);
  }
  return c;
}

void adapt_basis(ScaledReduction& red, std::span<const std::int64_t> x, int lead) {
  const int d = red.dim;
  const int m = d - lead;
  std::vector<i128> q(static_cast<std::size_t>(m));
  i128 g = 0;
  for (int r = 0; r < m; ++r) {
    q[static_cast<std::size_t>(r)] = x[static_cast<std::size_t>(lead + r)];
    g = gcd128(g, q[static_cast<std::size_t>(r)]);
  }
  if (g == 0) throw BadParams("adapt_basis: vector lies in the leading block");
  for (auto& v : q) v /= g;

  // Reduce q to +-e_0 by unimodular row operations E and keep A = E^{-1},
  // so the first column of A is q.
  std::vector<i128> a(static_cast<std::size_t>(m * m), 0);
  auto at = [&](int r, int c) -> i128& { return a[static_cast<std::size_t>(r * m + c)]; };
  for (int r = 0; r < m; ++r) at(r, r) = 1;
  while (true) {
    int piv = -1;
    for (int r = 0; r < m; ++r)
      if (q[static_cast<std::size_t>(r)] != 0 &&
          (piv < 0 || abs128(q[static_cast<std::size_t>(r)]) < abs128(q[static_cast<std::size_t>(piv)])))
        piv = r;
    bool single = true;
    for (int r = 0; r < m; ++r) {
      if (r == piv || q[static_cast<std::size_t>(r)] == 0) continue;
      single = false;
      i128 t = q[static_cast<std::size_t>(r)] / q[static_cast<std::size_t>(piv)];
      q[static_cast<std::size_t>(r)] -= t * q[static_cast<std::size_t>(piv)];
      for (int i = 0; i < m; ++i) at(i, piv) += t * at(i, r);
    }
    if (single) {
      std::swap(q[0], q[static_cast<std::size_t>(piv)]);
      for (int i = 0; i < m; ++i) std::swap(at(i, 0), at(i, piv));
      if (q[0] < 0)
        for (int i = 0; i < m; ++i) at(i, 0) = -at(i, 0);
      break;
    }
  }

  IntMatrix t = red.transform;
  for (int row = 0; row < d; ++row)
    for (int c = 0; c < m; ++c) {
      i128 s = 0;
      for (int r = 0; r < m; ++r)
        s += static_cast<i128>(red.transform[static_cast<std::size_t>(row * d + lead + r)]) * at(r, c);
      t[static_cast<std::size_t>(row * d + lead + c)] = checked_narrow(s);
    }
  red.transform = std::move(t);
}

LevelBounds level_bounds(const Matrix& reduced) {
  const int d = static_cast<int>(reduced.cols());
  const Matrix inv = reduced.inverse();
  LevelBounds lb;
  lb.dim = d;
  lb.vertices.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const int m = d - i;
    // Generators of the projected cube: columns of the last m rows of inv.
    const Matrix gen = inv.bottomRows(m);
    auto& out = lb.vertices[static_cast<std::size_t>(i)];
    auto add = [&](Eigen::VectorXd n) {
      double h = (n.transpose() * gen).cwiseAbs().sum();
      if (!(h > 0.0) || !std::isfinite(h)) return;
      n /= h;
      for (const auto& v : out) {
        Eigen::Map<const Eigen::VectorXd> w(v.data(), m);
        if ((w - n).cwiseAbs().maxCoeff() <= 1e-14 * w.cwiseAbs().maxCoeff() ||
            (w + n).cwiseAbs().maxCoeff() <= 1e-14 * w.cwiseAbs().maxCoeff())
          return;
      }
      out.emplace_back(n.data(), n.data() + m);
    };
    // Coordinate functionals: always valid, and they keep every interval finite.
    for (int j = 0; j < m; ++j) add(Eigen::VectorXd::Unit(m, j));
    if (m == 1) continue;
    // Facet normals of the zonotope: normals of (m-1)-subsets of generators.
    std::vector<int> idx(static_cast<std::size_t>(m - 1));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Matrix g(m, m - 1);
      for (int c = 0; c < m - 1; ++c) g.col(c) = gen.col(idx[static_cast<std::size_t>(c)]);
      Eigen::ColPivHouseholderQR<Matrix> qr(g);
      qr.setThreshold(1e-10);
      if (qr.rank() == m - 1) {
        Matrix q = qr.householderQ();
        add(q.col(m - 1));
      }
      int c = m - 2;
      while (c >= 0 && idx[static_cast<std::size_t>(c)] == d - (m - 1) + c) --c;
      if (c < 0) break;
      ++idx[static_cast<std::size_t>(c)];
      for (int e = c + 1; e < m - 1; ++e) idx[static_cast<std::size_t>(e)] = idx[static_cast<std::size_t>(e - 1)] + 1;
    }
  }
  return lb;
}

void enumerate_sup(const ScaledReduction& red, const LevelBounds& bounds, double& limit,
                   Pruning pruning, int nonzero_from, std::uint64_t budget,
                   const std::function<void(std::span<const std::int64_t>)>& visit) {
  const int d = red.dim;
  std::vector<std::int64_t> x(static_cast<std::size_t>(d), 0);
  std::uint64_t nodes = 0;
  auto keep = [&](double b) { return pruning == Pruning::Strict ? b < limit : b <= limit; };

  std::function<void(int, bool)> descend = [&](int i, bool zero_above) {
    const auto& verts = bounds.vertices[static_cast<std::size_t>(i)];
    std::vector<double> offset(verts.size(), 0.0);
    double lo = -INFINITY, hi = INFINITY;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      double a = 0.0;
      for (int j = i + 1; j < d; ++j)
        a += verts[v][static_cast<std::size_t>(j - i)] * static_cast<double>(x[static_cast<std::size_t>(j)]);
      offset[v] = a;
      const double s = verts[v][0];
      if (s == 0.0) {
        if (!keep(std::abs(a))) return;
        continue;
      }
      double l = (-limit - a) / s, h = (limit - a) / s;
      if (s < 0.0) std::swap(l, h);
      lo = std::max(lo, l);
      hi = std::min(hi, h);
    }
    // Widen slightly; every candidate is re-tested below.
    lo = std::ceil(lo - 1e-9 * (1.0 + std::abs(lo)));
    hi = std::floor(hi + 1e-9 * (1.0 + std::abs(hi)));
    if (zero_above) lo = std::max(lo, i == nonzero_from ? 1.0 : 0.0);
    if (!(lo <= hi)) return;
    if (hi - lo > 4e15) throw BudgetExceeded("enumeration interval overflows");

    auto try_value = [&](double xi) {
      double b = 0.0;
      for (std::size_t v = 0; v < verts.size(); ++v) b = std::max(b, std::abs(offset[v] + verts[v][0] * xi));
      if (!keep(b)) return;
      if (++nodes > budget)
        throw BudgetExceeded("enumeration visited more than " + std::to_string(budget) + " nodes");
      x[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(xi);
      if (i == 0)
        visit(x);
      else
        descend(i - 1, zero_above && xi == 0.0);
    };
    // Zig-zag outward from the middle of the feasible interval.
    const double center = std::clamp(std::nearbyint(0.5 * (lo + hi)), lo, hi);
    for (double step = 0.0;; step += 1.0) {
      const double up = center + step, down = center - step;
      if (up > hi && down < lo) break;
      if (up <= hi) try_value(up);
      if (step > 0.0 && down >= lo) try_value(down);
    }
    x[static_cast<std::size_t>(i)] = 0;
  };
  descend(d - 1, true);
}

int integer_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  std::vector<std::vector<i128>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) m.emplace_back(row.begin(), row.end());

  int rank = 0;
  for (std::size_t col = 0; col < n && static_cast<std::size_t>(rank) < m.size(); ++col) {
    auto pivot = std::find_if(m.begin() + rank, m.end(), [&](const auto& row) { return row[col] != 0; });
    if (pivot == m.end()) continue;
    std::iter_swap(m.begin() + rank, pivot);
    const auto& p = m[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < m.size(); ++r) {
      auto& row = m[r];
      if (row[col] == 0) continue;
      i128 a = p[col], b = row[col];
      i128 g = gcd128(a, b);
      a /= g;
      b /= g;
      i128 content = 0;
      for (std::size_t c = 0; c < n; ++c) {
        row[c] = row[c] * a - p[c] * b;
        content = gcd128(content, row[c]);
      }
      if (content > 1)
        for (auto& v : row) v /= content;
    }
    ++rank;
  }
  return rank;
}

}  // namespace mpgn::detail
