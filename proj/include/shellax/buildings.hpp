#pragma once

#include "shellax/arrangement.hpp"
#include "shellax/complex.hpp"
#include "shellax/flags.hpp"
#include "shellax/linalg.hpp"
#include "shellax/report.hpp"
#include "shellax/structures.hpp"
#include "shellax/walks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace shellax {

// ---- prime field linear algebra ---------------------------------------------------

using FqRow = std::vector<int>;
using FqRows = std::vector<FqRow>;

inline int fq_inverse(int a, int q) {
  for (int b = 1; b < q; ++b)
    if (a * b % q == 1) return b;
  fail(ErrorKind::Precondition, "zero has no inverse");
}

/// Reduced row echelon form with leading ones, zero rows dropped.
inline FqRows fq_rref(FqRows m, int q) {
  if (m.empty()) return m;
  const int cols = static_cast<int>(m.front().size());
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] % q == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    int inv = fq_inverse(m[row][c], q);
    for (int& x : m[row]) x = x * inv % q;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      int f = m[r][c];
      for (int k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[row][k]) % q + q) % q;
    }
    ++row;
  }
  m.resize(row);
  return m;
}

inline int fq_rank(const FqRows& m, int q) { return static_cast<int>(fq_rref(m, q).size()); }

/// Basis of {y : m y = 0}.
inline FqRows fq_nullspace(const FqRows& m, int cols, int q) {
  FqRows r = fq_rref(m, q);
  std::vector<int> piv;
  for (const auto& row : r) piv.push_back(static_cast<int>(std::find_if(row.begin(), row.end(), [](int x) { return x != 0; }) - row.begin()));
  FqRows basis;
  for (int f = 0; f < cols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    FqRow v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < r.size(); ++i) v[piv[i]] = (q - r[i][f]) % q;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline FqRows fq_sum(const FqRows& a, const FqRows& b, int q) {
  FqRows m = a;
  m.insert(m.end(), b.begin(), b.end());
  return fq_rref(m, q);
}

inline FqRows fq_intersection(const FqRows& a, const FqRows& b, int n, int q) {
  FqRows perp = fq_sum(fq_nullspace(a, n, q), fq_nullspace(b, n, q), q);
  return fq_rref(fq_nullspace(perp, n, q), q);
}

inline std::string subspace_name(const FqRows& rref) {
  std::string s;
  for (std::size_t i = 0; i < rref.size(); ++i) {
    if (i) s += '.';
    for (int x : rref[i]) s += static_cast<char>('0' + x);
  }
  return s;
}

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// All k-dimensional subspaces of F_q^n in reduced echelon form, ordered by name.
inline std::vector<FqRows> subspaces_of_dim(int n, int k, int q) {
  std::vector<FqRows> out;
  std::vector<int> pivots(k);
  auto choose = [&](auto&& self, int start, int idx) -> void {
    if (idx == k) {
      std::vector<std::pair<int, int>> free;
      for (int i = 0; i < k; ++i)
        for (int c = pivots[i] + 1; c < n; ++c)
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(i, c);
      std::vector<int> digits(free.size(), 0);
      for (;;) {
        FqRows m(k, FqRow(n, 0));
        for (int i = 0; i < k; ++i) m[i][pivots[i]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) m[free[f].first][free[f].second] = digits[f];
        out.push_back(std::move(m));
        std::size_t f = 0;
        while (f < digits.size() && ++digits[f] == q) digits[f++] = 0;
        if (f == digits.size()) break;
      }
      return;
    }
    for (int c = start; c < n; ++c) {
      pivots[idx] = c;
      self(self, c + 1, idx + 1);
    }
  };
  choose(choose, 0, 0);
  std::sort(out.begin(), out.end(), [](const FqRows& a, const FqRows& b) { return subspace_name(a) < subspace_name(b); });
  return out;
}

// ---- permutations ---------------------------------------------------------------------

/// Permutations of {0..n-1}; w[j] is the image of j.
using Perm = std::vector<int>;

inline int inversions(const Perm& w) {
  int c = 0;
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = a + 1; b < w.size(); ++b)
      if (w[a] > w[b]) ++c;
  return c;
}

/// (a o b)(j) = a(b(j)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) c[j] = a[b[j]];
  return c;
}

inline Perm longest_perm(int n) {
  Perm w(n);
  for (int i = 0; i < n; ++i) w[i] = n - 1 - i;
  return w;
}

inline std::string perm_string(const Perm& w) {
  return join_map(w, "", [](int x) { return std::to_string(x + 1); });
}

/// Descent set as a type mask: bit i-1 for a descent at position i.
inline unsigned descent_mask(const Perm& w) {
  unsigned m = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1]) m |= 1u << i;
  return m;
}

// ---- q-polynomials ---------------------------------------------------------------------

struct QPolynomial {
  std::vector<long long> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  long long coeff(int k) const { return k >= 0 && k < static_cast<int>(c.size()) ? c[k] : 0; }
  void add(int k, long long x) {
    if (static_cast<int>(c.size()) <= k) c.resize(k + 1, 0);
    c[k] += x;
  }
  Rational eval(const Rational& x) const {
    Rational s = 0, p = 1;
    for (long long a : c) {
      s += a * p;
      p *= x;
    }
    return s;
  }
  bool operator==(const QPolynomial& o) const { return c == o.c; }
  bool operator!=(const QPolynomial& o) const { return c != o.c; }

  /// Increasing degree: "q + 2q^2 + q^3".
  std::string str() const {
    std::string s;
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
      if (c[k] == 0) continue;
      std::string term;
      long long a = c[k];
      if (!s.empty()) s += a < 0 ? " - " : " + ";
      else if (a < 0) s += "-";
      a = a < 0 ? -a : a;
      if (k == 0 || a != 1) term += std::to_string(a);
      if (k >= 1) term += "q";
      if (k >= 2) term += "^" + std::to_string(k);
      s += term;
    }
    return s.empty() ? "0" : s;
  }
};

/// h_J(q) = sum over permutations with descent set J of q^inv.
inline std::vector<QPolynomial> descent_polynomials(int n) {
  std::vector<QPolynomial> h(std::size_t{1} << (n - 1));
  Perm w(n);
  std::iota(w.begin(), w.end(), 0);
  do h[descent_mask(w)].add(inversions(w), 1);
  while (std::next_permutation(w.begin(), w.end()));
  for (auto& p : h) p.trim();
  return h;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// [n]_q! = prod_{i=1..n} (1 + q + ... + q^{i-1}).
inline long long q_factorial(int n, int q) {
  long long r = 1;
  for (int i = 1; i <= n; ++i) {
    long long s = 0;
    for (int k = 0; k < i; ++k) s += ipow(q, k);
    r *= s;
  }
  return r;
}

// ---- the building ---------------------------------------------------------------------

inline constexpr long long kMaxApartments = 100000;

/// Flag complex of proper nonzero subspaces of F_q^n. Vertex ids follow
/// (dimension, name); the vertex of dimension i has type "i".
struct Building {
  int n = 0;
  int q = 0;
  std::vector<FqRows> subspace;
  std::vector<int> dim;
  std::unordered_map<std::string, int> by_name;
  Complex complex;
  /// Apartments: frames as sorted line vertex ids, with their chambers
  /// indexed by permutation rank (lexicographic order of u).
  std::vector<std::vector<int>> frames;
  std::vector<std::vector<ChamberId>> frame_chambers;
  std::vector<std::vector<int>> chamber_frames;
  std::map<std::vector<int>, int> frame_index;

  /// Subspace of dimension i in chamber c (0 and V for i = 0, n).
  FqRows flag_space(ChamberId c, int i) const {
    if (i == 0) return {};
    if (i == n) {
      FqRows id(n, FqRow(n, 0));
      for (int k = 0; k < n; ++k) id[k][k] = 1;
      return id;
    }
    return subspace[complex.chamber_vertices(c)[i - 1]];
  }
  int vertex_of(const FqRows& rows) const {
    auto it = by_name.find(subspace_name(fq_rref(rows, q)));
    if (it == by_name.end()) fail(ErrorKind::LemmaViolation, "subspace not found");
    return it->second;
  }
  ChamberId chamber_of_flag(std::vector<int> vs) const {
    auto f = complex.find_face(std::move(vs));
    if (!f || complex.face_chamber(*f) < 0) fail(ErrorKind::LemmaViolation, "flag is not a chamber");
    return complex.face_chamber(*f);
  }
};

inline Building build_building(int n, int q) {
  if (n < 2) fail(ErrorKind::BadN, "building needs n >= 2");
  if (q < 2) fail(ErrorKind::Precondition, "q = " + std::to_string(q) + " is not a prime power");
  if (!is_prime(q)) {
    int p = 2;
    while (q % p) ++p;
    int m = q;
    while (m % p == 0) m /= p;
    if (q >= 2 && m == 1) fail(ErrorKind::NonPrimeField, "only prime fields are supported, got q = " + std::to_string(q));
    fail(ErrorKind::Precondition, "q = " + std::to_string(q) + " is not a prime power");
  }
  if (q > 7) fail(ErrorKind::ScaleExceeded, "building limited to q <= 7");
  long long chambers = q_factorial(n, q);
  if (chambers > kMaxChambers) fail(ErrorKind::ScaleExceeded, std::to_string(chambers) + " chambers exceed " + std::to_string(kMaxChambers));

  Building b;
  b.n = n;
  b.q = q;
  ComplexInput in;
  std::vector<std::vector<int>> by_dim(n);
  for (int k = 1; k < n; ++k)
    for (auto& s : subspaces_of_dim(n, k, q)) {
      int id = static_cast<int>(b.subspace.size());
      std::string name = subspace_name(s);
      b.by_name.emplace(name, id);
      in.vertex_names.push_back(name);
      in.vertex_types.push_back(std::to_string(k));
      b.subspace.push_back(std::move(s));
      b.dim.push_back(k);
      by_dim[k].push_back(id);
    }
  // containment between consecutive dimensions
  std::vector<std::vector<int>> above(b.subspace.size());
  for (int k = 1; k + 1 < n; ++k)
    for (int u : by_dim[k])
      for (int v : by_dim[k + 1])
        if (fq_rank(fq_sum(b.subspace[v], b.subspace[u], q), q) == k + 1) above[u].push_back(v);
  std::vector<int> flag;
  auto extend = [&](auto&& self) -> void {
    if (static_cast<int>(flag.size()) == n - 1) {
      in.chambers.push_back(flag);
      return;
    }
    for (int v : above[flag.back()]) {
      flag.push_back(v);
      self(self);
      flag.pop_back();
    }
  };
  for (int u : by_dim[1]) {
    flag = {u};
    extend(extend);
  }
  if (static_cast<long long>(in.chambers.size()) != chambers)
    fail(ErrorKind::LemmaViolation, "found " + std::to_string(in.chambers.size()) + " complete flags, expected " + std::to_string(chambers));
  b.complex = build_complex(in);
  return b;
}

/// Frames (n independent lines) and the n! chambers of each apartment.
inline void enumerate_apartments(Building& b) {
  if (!b.frames.empty()) return;
  const int n = b.n, q = b.q;
  std::vector<int> lines;
  for (std::size_t v = 0; v < b.subspace.size(); ++v)
    if (b.dim[v] == 1) lines.push_back(static_cast<int>(v));
  std::vector<int> pick;
  FqRows rows;
  auto choose = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(pick.size()) == n) {
      b.frames.push_back(pick);
      if (static_cast<long long>(b.frames.size()) > kMaxApartments)
        fail(ErrorKind::ScaleExceeded, "more than " + std::to_string(kMaxApartments) + " apartments");
      return;
    }
    for (std::size_t i = start; i < lines.size(); ++i) {
      rows.push_back(b.subspace[lines[i]][0]);
      if (fq_rank(rows, q) == static_cast<int>(rows.size())) {
        pick.push_back(lines[i]);
        self(self, i + 1);
        pick.pop_back();
      }
      rows.pop_back();
    }
  };
  choose(choose, 0);
  b.chamber_frames.assign(b.complex.num_chambers(), {});
  for (std::size_t f = 0; f < b.frames.size(); ++f) {
    b.frame_index.emplace(b.frames[f], static_cast<int>(f));
    Perm u(n);
    std::iota(u.begin(), u.end(), 0);
    std::vector<ChamberId> cs;
    do {
      std::vector<int> vs;
      FqRows span;
      for (int i = 0; i + 1 < n; ++i) {
        span.push_back(b.subspace[b.frames[f][u[i]]][0]);
        vs.push_back(b.vertex_of(span));
      }
      ChamberId c = b.chamber_of_flag(vs);
      cs.push_back(c);
      b.chamber_frames[c].push_back(static_cast<int>(f));
    } while (std::next_permutation(u.begin(), u.end()));
    b.frame_chambers.push_back(std::move(cs));
  }
}

/// Relative position: w[j] = i (0-based) iff the (i+1, j+1) second difference
/// of dim(C_i cap D_j) is one.
inline Perm w_distance(const Building& b, ChamberId c, ChamberId d) {
  const int n = b.n;
  std::vector<std::vector<int>> dims(n + 1, std::vector<int>(n + 1, 0));
  std::vector<FqRows> cs(n + 1), ds(n + 1);
  for (int i = 0; i <= n; ++i) {
    cs[i] = b.flag_space(c, i);
    ds[i] = b.flag_space(d, i);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) dims[i][j] = i + j - fq_rank(fq_sum(cs[i], ds[j], b.q), b.q);
  Perm w(n, -1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (dims[i][j] - dims[i - 1][j] - dims[i][j - 1] + dims[i - 1][j - 1] == 1) w[j - 1] = i - 1;
  if (std::find(w.begin(), w.end(), -1) != w.end()) fail(ErrorKind::LemmaViolation, "relative position is not a permutation");
  return w;
}

inline std::size_t common_count(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t k = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] == b[j]) {
      ++k;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return k;
}

/// The unique E in the apartment with delta(C, E) = delta(C, D).
inline ChamberId retraction(const Building& b, int frame, ChamberId c, ChamberId d) {
  const auto& cs = b.frame_chambers.at(frame);
  if (std::find(cs.begin(), cs.end(), c) == cs.end())
    fail(ErrorKind::NotInApartment, "chamber " + b.complex.chamber_name(c) + " is not in apartment " + std::to_string(frame));
  Perm target = w_distance(b, c, d);
  std::optional<ChamberId> found;
  for (ChamberId e : cs)
    if (w_distance(b, c, e) == target) {
      if (found) fail(ErrorKind::LemmaViolation, "two chambers of the apartment share a relative position");
      found = e;
    }
  if (!found) fail(ErrorKind::LemmaViolation, "no chamber of the apartment has the relative position");
  return *found;
}

/// Apartment spanned by two opposite chambers: lines E_i cap F_{n+1-i}.
inline int apartment_of_opposite(const Building& b, ChamberId e, ChamberId f) {
  std::vector<int> lines;
  for (int i = 1; i <= b.n; ++i) {
    FqRows l = fq_intersection(b.flag_space(e, i), b.flag_space(f, b.n + 1 - i), b.n, b.q);
    if (l.size() != 1) fail(ErrorKind::NotOpposite, "chambers are not opposite");
    lines.push_back(b.vertex_of(l));
  }
  std::sort(lines.begin(), lines.end());
  auto it = b.frame_index.find(lines);
  if (it == b.frame_index.end()) fail(ErrorKind::LemmaViolation, "intersection lines do not form a frame");
  return it->second;
}

/// Chamber, apartment and distance counts.
inline Report building_counts(Building& b) {
  enumerate_apartments(b);
  const Complex& cx = b.complex;
  const int n = b.n, q = b.q;
  const long long per = ipow(q, n * (n - 1) / 2);
  Report r;
  r.info("vertices", std::to_string(cx.num_vertices()));
  r.info("chambers", std::to_string(cx.num_chambers()));
  r.info("apartments", std::to_string(b.frames.size()));
  r.expect("BUILDING.chambers", cx.num_chambers() == q_factorial(n, q),
           std::to_string(cx.num_chambers()) + " vs " + std::to_string(q_factorial(n, q)));
  // ordered bases of lines divided by scalings and orderings
  long long ordered = 1;
  for (int i = 0; i < n; ++i) ordered *= ipow(q, n) - ipow(q, i);
  long long expect_frames = ordered / ipow(q - 1, n) / factorial(n);
  r.expect("APT.count", static_cast<long long>(b.frames.size()) == expect_frames,
           std::to_string(b.frames.size()) + " vs " + std::to_string(expect_frames));
  r.declare("APT.per_chamber");
  for (ChamberId c = 0; c < cx.num_chambers(); ++c)
    if (static_cast<long long>(b.chamber_frames[c].size()) != per)
      r.fail("APT.per_chamber", "C=" + cx.chamber_name(c) + " in " + std::to_string(b.chamber_frames[c].size()) + " apartments");
  r.info("apartments_per_chamber", std::to_string(per));
  r.expect("APT.incidence", static_cast<long long>(b.frames.size()) * factorial(n) == cx.num_chambers() * per, "incidence count mismatch");
  r.declare("FACET.size");
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    if (cx.face_rank(f) == cx.rank() - 1 && static_cast<int>(cx.residue(f).size()) != q + 1)
      r.fail("FACET.size", "F=" + cx.face_name(f) + " in " + std::to_string(cx.residue(f).size()) + " chambers");
  r.declare("WDIST.length");
  r.declare("WDIST.identity");
  for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    if (w_distance(b, c, c) != id) r.fail("WDIST.identity", "C=" + cx.chamber_name(c));
    for (ChamberId d = 0; d < cx.num_chambers(); ++d)
      if (inversions(w_distance(b, c, d)) != cx.dist(c, d))
        r.fail("WDIST.length", "C=" + cx.chamber_name(c) + " D=" + cx.chamber_name(d));
  }
  return r;
}

/// Lemma on apartment counts for an opposite pair, the inversion formulas in
/// coordinates of their apartment and the explicit bijection.
inline Report apartment_count_identity(Building& b, ChamberId c, ChamberId cbar) {
  enumerate_apartments(b);
  const Complex& cx = b.complex;
  const int n = b.n, q = b.q;
  const Perm w0 = longest_perm(n);
  if (w_distance(b, c, cbar) != w0) fail(ErrorKind::NotOpposite, cx.chamber_name(c) + " and " + cx.chamber_name(cbar) + " are not opposite");
  const int frame = apartment_of_opposite(b, c, cbar);
  // e_i = C_i cap Cbar_{n+1-i}
  std::vector<int> e(n);
  for (int i = 1; i <= n; ++i) e[i - 1] = b.vertex_of(fq_intersection(b.flag_space(c, i), b.flag_space(cbar, n + 1 - i), n, q));
  auto apts = [&](ChamberId x, ChamberId y) { return static_cast<long long>(common_count(b.chamber_frames[x], b.chamber_frames[y])); };
  Report r;
  for (const char* id : {"DUAL.lemma", "DUAL.inversion.CD", "DUAL.inversion.DC", "DUAL.additivity", "DUAL.prime", "DUAL.bijection"}) r.declare(id);
  std::vector<ChamberId> opp_c;
  for (ChamberId x = 0; x < cx.num_chambers(); ++x)
    if (w_distance(b, c, x) == w0) opp_c.push_back(x);

  for (ChamberId d : b.frame_chambers[frame]) {
    std::string dn = "D=" + cx.chamber_name(d);
    // D_j = span(e_{i_1}, ..., e_{i_j})
    std::vector<int> idx(n);
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < n; ++i) {
        FqRows line = b.subspace[e[i]];
        bool in_j = fq_rank(fq_sum(b.flag_space(d, j), line, q), q) == j;
        bool in_prev = j > 1 && fq_rank(fq_sum(b.flag_space(d, j - 1), line, q), q) == j - 1;
        if (in_j && !in_prev) idx[j - 1] = i;
      }
    int asc = 0, desc = 0;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) (idx[j] < idx[k] ? asc : desc)++;
    long long cd = apts(c, d), dc = apts(d, cbar), dd = static_cast<long long>(b.chamber_frames[d].size());
    if (cd * dc != dd) r.fail("DUAL.lemma", dn + " " + std::to_string(cd) + "*" + std::to_string(dc) + "!=" + std::to_string(dd));
    if (cd != ipow(q, asc)) r.fail("DUAL.inversion.CD", dn + " count=" + std::to_string(cd) + " q^" + std::to_string(asc));
    if (dc != ipow(q, desc)) r.fail("DUAL.inversion.DC", dn + " count=" + std::to_string(dc) + " q^" + std::to_string(desc));

    Perm u = w_distance(b, c, d), w = w_distance(b, d, cbar);
    if (compose(u, w) != w0 || inversions(u) + inversions(w) != inversions(w0))
      r.fail("DUAL.additivity", dn + " u=" + perm_string(u) + " w=" + perm_string(w));

    // A'_{C,D}: chambers opposite C whose apartment with C contains D
    long long prime = 0;
    for (ChamberId x : opp_c) {
      const auto& cs = b.frame_chambers[apartment_of_opposite(b, c, x)];
      if (std::find(cs.begin(), cs.end(), d) != cs.end()) ++prime;
    }
    if (prime != cd) r.fail("DUAL.prime", dn + " " + std::to_string(prime) + " vs " + std::to_string(cd));

    // (E, Ebar) with delta(D,E) = w and delta(Ebar,D) = u map to the apartment they span
    std::vector<ChamberId> es, ebars;
    for (ChamberId x = 0; x < cx.num_chambers(); ++x) {
      if (w_distance(b, d, x) == w) es.push_back(x);
      if (w_distance(b, x, d) == u) ebars.push_back(x);
    }
    std::vector<int> image;
    bool ok = true;
    for (ChamberId x : es)
      for (ChamberId y : ebars) {
        if (w_distance(b, y, x) != w0) {
          ok = false;
          continue;
        }
        int f = apartment_of_opposite(b, x, y);
        const auto& cs = b.frame_chambers[f];
        if (std::find(cs.begin(), cs.end(), d) == cs.end()) ok = false;
        image.push_back(f);
      }
    std::sort(image.begin(), image.end());
    bool injective = std::adjacent_find(image.begin(), image.end()) == image.end();
    if (!ok || !injective || image != b.chamber_frames[d])
      r.fail("DUAL.bijection", dn + " pairs=" + std::to_string(es.size()) + "x" + std::to_string(ebars.size()) + " apartments=" + std::to_string(dd));
  }
  return r;
}

/// Retraction onto an apartment from a chamber in it: fixed points, type of
/// restrictions, compatibility with projections, and the fibre of the opposite.
inline Report retraction_report(Building& b, const MetricStructure& m, int frame, ChamberId c) {
  enumerate_apartments(b);
  const Complex& cx = b.complex;
  const auto& apt = b.frame_chambers.at(frame);
  std::vector<ChamberId> rho(cx.num_chambers());
  Report r;
  for (const char* id : {"RETRACT.fixed", "RETRACT.simplicial", "RETRACT.projection", "RETRACT.type", "RETRACT.fibers", "RETRACT.opposite"})
    r.declare(id);
  std::map<Perm, ChamberId> by_position;
  for (ChamberId e : apt) by_position[w_distance(b, c, e)] = e;
  if (std::find(apt.begin(), apt.end(), c) == apt.end()) fail(ErrorKind::NotInApartment, "base chamber is not in the apartment");
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) rho[d] = by_position.at(w_distance(b, c, d));
  for (ChamberId d : apt)
    if (rho[d] != d) r.fail("RETRACT.fixed", "D=" + cx.chamber_name(d));

  // faces go to the face of the same type in rho(D)
  std::vector<FaceId> rho_face(cx.num_faces(), -1);
  for (ChamberId d = 0; d < cx.num_chambers(); ++d)
    for (unsigned mask = 0; mask <= cx.full_mask(); ++mask) {
      FaceId f = cx.sub(d, mask);
      FaceId g = cx.sub(rho[d], mask);
      if (rho_face[f] < 0)
        rho_face[f] = g;
      else if (rho_face[f] != g)
        r.fail("RETRACT.simplicial", "F=" + cx.face_name(f));
    }
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    if (m.P(rho_face[f], c) != rho[m.P(f, c)]) r.fail("RETRACT.projection", "F=" + cx.face_name(f));
  const unsigned types = (1u << cx.num_labels()) - 1u;
  std::vector<long long> by_type(types + 1, 0), via_fibres(types + 1, 0);
  std::map<ChamberId, long long> fibre;
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    unsigned t = cx.type_mask(m.R(c, d));
    if (t != cx.type_mask(m.R(c, rho[d]))) r.fail("RETRACT.type", "E=" + cx.chamber_name(d));
    ++by_type[t];
    ++fibre[rho[d]];
  }
  for (ChamberId d : apt) via_fibres[cx.type_mask(m.R(c, d))] += fibre[d];
  if (by_type != via_fibres) r.fail("RETRACT.fibers", "type counts differ from fibre sums");
  const Perm w0 = longest_perm(b.n);
  ChamberId cbar = by_position.at(w0);
  long long opp = 0;
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    bool is_opp = w_distance(b, c, d) == w0;
    if (is_opp != (rho[d] == cbar)) r.fail("RETRACT.opposite", "E=" + cx.chamber_name(d));
    if (is_opp) ++opp;
  }
  long long per = ipow(b.q, b.n * (b.n - 1) / 2);
  if (opp != per || static_cast<long long>(b.chamber_frames[c].size()) != per)
    r.fail("RETRACT.opposite", "|C^op|=" + std::to_string(opp) + " |A_C|=" + std::to_string(b.chamber_frames[c].size()));
  return r;
}

/// Projections inside an apartment against the product of ordered set
/// partitions of its frame lines.
inline Report apartment_gate_report(Building& b, const MetricStructure& m, int frame) {
  enumerate_apartments(b);
  const Complex& cx = b.complex;
  const int n = b.n, q = b.q;
  const auto& lines = b.frames.at(frame);
  const auto& apt = b.frame_chambers[frame];
  // block index of each frame line for a face of the apartment
  auto blocks = [&](FaceId f) {
    std::vector<int> blk(n, 0);
    std::vector<int> dims;
    for (VertexId v : cx.face_vertices(f)) dims.push_back(b.dim[v]);
    const auto& vs = cx.face_vertices(f);
    for (int i = 0; i < n; ++i) {
      int k = 0;
      while (k < static_cast<int>(vs.size()) && fq_rank(fq_sum(b.subspace[vs[k]], b.subspace[lines[i]], q), q) != b.dim[vs[k]]) ++k;
      blk[i] = k;
    }
    return blk;
  };
  auto product_chamber = [&](const std::vector<int>& fb, const std::vector<int>& cb) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int c) { return std::pair{fb[a], cb[a]} < std::pair{fb[c], cb[c]}; });
    std::vector<int> vs;
    FqRows span;
    for (int i = 0; i + 1 < n; ++i) {
      span.push_back(b.subspace[lines[order[i]]][0]);
      vs.push_back(b.vertex_of(span));
    }
    return b.chamber_of_flag(vs);
  };
  Report r;
  r.declare("GATE.apartment");
  std::vector<char> in_apt(cx.num_faces(), 0);
  for (ChamberId c : apt)
    for (unsigned mask = 0; mask <= cx.full_mask(); ++mask) in_apt[cx.sub(c, mask)] = 1;
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    if (!in_apt[f]) continue;
    auto fb = blocks(f);
    for (ChamberId c : apt) {
      ChamberId expect = product_chamber(fb, blocks(cx.chamber_face(c)));
      if (m.P(f, c) != expect) r.fail("GATE.apartment", "F=" + cx.face_name(f) + " C=" + cx.chamber_name(c));
    }
  }
  return r;
}

struct HqResult {
  std::vector<QPolynomial> poly;
  FlagVector counted;
  Report report;
};

/// h_J(q) from descent statistics, compared with the counts on the built
/// building, the duality identity and the apartment specialisation.
inline HqResult hq_polynomials(Building& b, const MetricStructure& m) {
  enumerate_apartments(b);
  const Complex& cx = b.complex;
  const int n = b.n;
  const int top = n * (n - 1) / 2;
  HqResult out;
  out.poly = descent_polynomials(n);
  out.counted = beta_from_restriction(cx, m.R, 0, true);
  Report& r = out.report;
  r.merge(beta_report(cx, m.R, true));
  const unsigned all = (1u << (n - 1)) - 1u;
  r.declare("HQ.oracle");
  for (unsigned j = 0; j <= all; ++j)
    if (Rational(out.counted[j]) != out.poly[j].eval(b.q))
      r.fail_internal("HQ.oracle", "J=" + cx.label_set_name(j) + " counted=" + std::to_string(out.counted[j]) + " polynomial=" + out.poly[j].str());
  r.declare("HQ.duality.poly");
  r.declare("HQ.duality.eval");
  for (unsigned j = 0; j <= all; ++j) {
    const QPolynomial& a = out.poly[j];
    const QPolynomial& c = out.poly[all & ~j];
    for (int k = 0; k <= top; ++k)
      if (a.coeff(k) != c.coeff(top - k)) {
        r.fail("HQ.duality.poly", "J=" + cx.label_set_name(j) + " degree " + std::to_string(k));
        break;
      }
    for (Rational x : {Rational(2), Rational(3), Rational(1, 2), Rational(-5, 3)}) {
      Rational xt = 1;
      for (int k = 0; k < top; ++k) xt *= x;
      if (a.eval(x) != xt * c.eval(1 / x)) r.fail("HQ.duality.eval", "J=" + cx.label_set_name(j) + " at " + rational_string(x));
    }
  }
  r.expect("HQ.top", out.poly[all].c == [&] {
    std::vector<long long> v(top + 1, 0);
    v[top] = 1;
    return v;
  }(), "h_I = " + out.poly[all].str());
  // an apartment is a Coxeter complex; its h-vector is the value at q = 1
  ComplexInput in;
  const auto& apt = b.frame_chambers.front();
  std::map<VertexId, int> local;
  for (ChamberId c : apt)
    for (VertexId v : cx.chamber_vertices(c))
      if (!local.count(v)) {
        local.emplace(v, static_cast<int>(in.vertex_names.size()));
        in.vertex_names.push_back(cx.vertex_name(v));
        in.vertex_types.push_back(std::to_string(b.dim[v]));
      }
  for (ChamberId c : apt) {
    std::vector<VertexId> vs;
    for (VertexId v : cx.chamber_vertices(c)) vs.push_back(local.at(v));
    in.chambers.push_back(vs);
  }
  // relabel so label order matches dimension order
  std::vector<std::size_t> perm(in.vertex_names.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t c) { return std::stoi(in.vertex_types[a]) < std::stoi(in.vertex_types[c]); });
  ComplexInput sorted;
  std::vector<int> where(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    where[perm[i]] = static_cast<int>(i);
    sorted.vertex_names.push_back(in.vertex_names[perm[i]]);
    sorted.vertex_types.push_back(in.vertex_types[perm[i]]);
  }
  for (auto& ch : in.chambers) {
    std::vector<VertexId> vs;
    for (VertexId v : ch) vs.push_back(where[v]);
    sorted.chambers.push_back(vs);
  }
  Complex apartment = build_complex(sorted);
  FlagVector ha = flag_vectors(apartment, true).h;
  r.declare("HQ.apartment");
  for (unsigned j = 0; j <= all; ++j)
    if (Rational(ha[j]) != out.poly[j].eval(1)) r.fail("HQ.apartment", "J=" + cx.label_set_name(j));
  return out;
}

inline void write_hq(std::ostream& out, const Complex& cx, const std::vector<QPolynomial>& poly, Format fmt = Format::Text) {
  for (unsigned j = 0; j < poly.size(); ++j) {
    if (fmt == Format::Tsv)
      out << "hq\t" << cx.label_set_name(j) << '\t' << poly[j].str() << '\n';
    else
      out << "h[" << cx.label_set_name(j) << "] = " << poly[j].str() << '\n';
  }
}

}  // namespace shellax
