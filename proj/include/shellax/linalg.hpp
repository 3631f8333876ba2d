#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace shellax {

using Rational = boost::multiprecision::cpp_rational;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

inline Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVector to_rational(const std::vector<long long>& v) { return QVector(v.begin(), v.end()); }

inline int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Row echelon form in place; returns the pivot columns.
inline std::vector<int> row_reduce(QMatrix& m, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (int k = c; k < cols; ++k) m[row][k] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

inline int matrix_rank(QMatrix m, int cols) { return static_cast<int>(row_reduce(m, cols).size()); }

/// Basis of {y : m y = 0}.
inline QMatrix nullspace(QMatrix m, int cols) {
  std::vector<int> piv = row_reduce(m, cols);
  std::vector<char> is_piv(cols, 0);
  for (int c : piv) is_piv[c] = 1;
  QMatrix basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    QVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Scales a nonzero vector by a positive factor to a primitive integer vector.
inline void make_primitive(QVector& v) {
  using boost::multiprecision::cpp_int;
  cpp_int l = 1;
  for (const auto& x : v) {
    cpp_int d = boost::multiprecision::denominator(x);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  cpp_int g = 0;
  for (auto& x : v) {
    x *= l;
    g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(x));
  }
  if (g > 1)
    for (auto& x : v) x /= Rational(g);
}

/// Decides whether some y satisfies eq y = 0 and gt y > 0 (componentwise),
/// by parametrising the equality solutions and eliminating variables from the
/// strict homogeneous inequalities (Fourier-Motzkin).
inline bool strictly_feasible(const QMatrix& eq, const QMatrix& gt, int dim) {
  QMatrix basis = eq.empty() ? QMatrix{} : nullspace(eq, dim);
  if (eq.empty())
    for (int i = 0; i < dim; ++i) {
      QVector e(dim, Rational(0));
      e[i] = 1;
      basis.push_back(e);
    }
  const int k = static_cast<int>(basis.size());
  QMatrix rows;
  for (const auto& g : gt) {
    QVector r(k);
    for (int j = 0; j < k; ++j) r[j] = dot(g, basis[j]);
    rows.push_back(std::move(r));
  }
  auto normalise = [&](QMatrix& rs) {
    for (auto& r : rs)
      if (std::any_of(r.begin(), r.end(), [](const Rational& x) { return x != 0; })) make_primitive(r);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  };
  normalise(rows);
  for (int v = k - 1; v >= 0; --v) {
    QMatrix pos, neg, next;
    for (auto& r : rows) {
      if (r[v] > 0)
        pos.push_back(r);
      else if (r[v] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        QVector c(k);
        Rational a = -n[v], b = p[v];
        for (int j = 0; j < k; ++j) c[j] = a * p[j] + b * n[j];
        next.push_back(std::move(c));
      }
    rows = std::move(next);
    normalise(rows);
  }
  // every remaining row is identically zero and reads 0 > 0
  return rows.empty();
}

}  // namespace shellax
