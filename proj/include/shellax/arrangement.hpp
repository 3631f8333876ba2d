#pragma once

#include "shellax/complex.hpp"
#include "shellax/error.hpp"
#include "shellax/linalg.hpp"
#include "shellax/report.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace shellax {

using Sign = signed char;
using SignVector = std::vector<Sign>;

inline constexpr int kMaxHyperplanes = 16;
inline constexpr int kMaxArrangementDim = 6;

inline std::string sign_string(const SignVector& x) {
  std::string s;
  for (Sign v : x) s += v > 0 ? '+' : (v < 0 ? '-' : '0');
  return s;
}

inline SignVector parse_sign_vector(const std::string& s) {
  SignVector x;
  for (char ch : s) {
    if (ch == '+')
      x.push_back(1);
    else if (ch == '-')
      x.push_back(-1);
    else if (ch == '0')
      x.push_back(0);
    else
      fail(ErrorKind::ParseError, "bad sign character in '" + s + "'");
  }
  return x;
}

/// (xy)_H = x_H unless x_H = 0, then y_H.
inline SignVector sign_product(const SignVector& x, const SignVector& y) {
  if (x.size() != y.size()) fail(ErrorKind::Precondition, "sign vectors of different length");
  SignVector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] != 0 ? x[i] : y[i];
  return z;
}

/// Central arrangement of linear hyperplanes a.x = 0 with integer normals.
struct Arrangement {
  int dim = 0;
  std::vector<std::vector<long long>> normals;

  int size() const { return static_cast<int>(normals.size()); }
  QVector normal(int i) const { return to_rational(normals[i]); }
  QMatrix rows(std::uint32_t mask) const {
    QMatrix m;
    for (int i = 0; i < size(); ++i)
      if (mask >> i & 1u) m.push_back(normal(i));
    return m;
  }
  int rank_of(std::uint32_t mask) const { return mask == 0 ? 0 : matrix_rank(rows(mask), dim); }
  std::uint32_t all() const { return size() == 32 ? ~0u : ((1u << size()) - 1u); }
  int rank() const { return rank_of(all()); }
  bool essential() const { return rank() == dim; }
};

inline Arrangement make_arrangement(int dim, std::vector<std::vector<long long>> normals) {
  if (dim <= 0) fail(ErrorKind::Precondition, "arrangement dimension must be positive");
  if (dim > kMaxArrangementDim) fail(ErrorKind::ScaleExceeded, "dimension " + std::to_string(dim) + " exceeds " + std::to_string(kMaxArrangementDim));
  if (normals.empty()) fail(ErrorKind::EmptyInput, "no hyperplanes");
  if (static_cast<int>(normals.size()) > kMaxHyperplanes)
    fail(ErrorKind::ScaleExceeded, std::to_string(normals.size()) + " hyperplanes exceed " + std::to_string(kMaxHyperplanes));
  Arrangement a{dim, std::move(normals)};
  for (int i = 0; i < a.size(); ++i) {
    if (static_cast<int>(a.normals[i].size()) != dim) fail(ErrorKind::ParseError, "normal " + std::to_string(i + 1) + " has the wrong length");
    if (std::all_of(a.normals[i].begin(), a.normals[i].end(), [](long long x) { return x == 0; }))
      fail(ErrorKind::DegenerateNormal, "normal " + std::to_string(i + 1) + " is zero");
    for (int j = 0; j < i; ++j)
      if (a.rank_of((1u << i) | (1u << j)) == 1)
        fail(ErrorKind::DegenerateNormal, "normals " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " are parallel");
  }
  return a;
}

/// `hyperplane a1 ... ad` lines.
inline Arrangement parse_arrangement(std::istream& in) {
  std::vector<std::vector<long long>> normals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] != "hyperplane" || t.size() < 2) fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'hyperplane a1 ... ad'");
    std::vector<long long> a;
    for (std::size_t i = 1; i < t.size(); ++i) {
      try {
        std::size_t used = 0;
        a.push_back(std::stoll(t[i], &used));
        if (used != t[i].size()) throw std::invalid_argument(t[i]);
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad integer '" + t[i] + "'");
      }
    }
    if (!normals.empty() && a.size() != normals.front().size())
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": dimension differs from earlier hyperplanes");
    normals.push_back(std::move(a));
  }
  if (normals.empty()) fail(ErrorKind::EmptyInput, "no hyperplanes");
  int dim = static_cast<int>(normals.front().size());
  return make_arrangement(dim, std::move(normals));
}

inline void write_arrangement(std::ostream& out, const Arrangement& a) {
  for (const auto& n : a.normals) {
    out << "hyperplane";
    for (long long x : n) out << ' ' << x;
    out << '\n';
  }
}

inline long long factorial(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Reflection arrangements. A takes n coordinates (type A_{n-1}) and works in
/// the quotient x_n = 0, so normals are e_i - e_j (i < j < n) and e_i (i < n).
/// B_n: e_i - e_j, e_i + e_j, e_i. D_n: e_i - e_j, e_i + e_j.
inline Arrangement coxeter_arrangement(char family, int n) {
  std::vector<std::vector<long long>> normals;
  int dim = 0;
  auto unit = [&](int i) {
    std::vector<long long> v(dim, 0);
    v[i] = 1;
    return v;
  };
  auto pm = [&](int i, int j, long long s) {
    std::vector<long long> v(dim, 0);
    v[i] = 1;
    v[j] = s;
    return v;
  };
  switch (family) {
    case 'A':
      if (n < 2 || n > 5) fail(n < 2 ? ErrorKind::BadN : ErrorKind::ScaleExceeded, "type A needs 2 <= n <= 5");
      dim = n - 1;
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) normals.push_back(pm(i, j, -1));
      for (int i = 0; i < dim; ++i) normals.push_back(unit(i));
      break;
    case 'B':
      if (n < 1 || n > 4) fail(n < 1 ? ErrorKind::BadN : ErrorKind::ScaleExceeded, "type B needs 1 <= n <= 4");
      dim = n;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          normals.push_back(pm(i, j, -1));
          normals.push_back(pm(i, j, 1));
        }
      for (int i = 0; i < n; ++i) normals.push_back(unit(i));
      break;
    case 'D':
      if (n < 2 || n > 4) fail(n < 2 ? ErrorKind::BadN : ErrorKind::ScaleExceeded, "type D needs 2 <= n <= 4");
      dim = n;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          normals.push_back(pm(i, j, -1));
          normals.push_back(pm(i, j, 1));
        }
      break;
    default:
      fail(ErrorKind::Precondition, std::string("unknown Coxeter family '") + family + "'");
  }
  return make_arrangement(dim, std::move(normals));
}

/// Order of the reflection group, i.e. the expected chamber count.
inline long long coxeter_group_order(char family, int n) {
  switch (family) {
    case 'A': return factorial(n);
    case 'B': return (1LL << n) * factorial(n);
    case 'D': return (1LL << (n - 1)) * factorial(n);
  }
  return 0;
}

/// Coordinate hyperplanes x_i = 0.
inline Arrangement boolean_arrangement(int n) {
  std::vector<std::vector<long long>> normals;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> v(n, 0);
    v[i] = 1;
    normals.push_back(v);
  }
  return make_arrangement(n, std::move(normals));
}

/// Four planes in general position in R^3.
inline Arrangement generic_four_planes() { return make_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}); }

/// Rank-2 arrangement of n lines through the origin (a 2n-gon).
inline Arrangement lines_arrangement(int n) {
  if (n < 1) fail(ErrorKind::BadN, "need at least one line");
  std::vector<std::vector<long long>> normals{{0, 1}};
  for (int i = 1; i < n; ++i) normals.push_back({1, static_cast<long long>(i - 1)});
  return make_arrangement(2, std::move(normals));
}

/// Decides realizability of a sign vector exactly.
inline bool is_realizable(const Arrangement& a, const SignVector& x) {
  if (static_cast<int>(x.size()) != a.size()) fail(ErrorKind::Precondition, "sign vector length differs from the arrangement");
  QMatrix eq, gt;
  for (int i = 0; i < a.size(); ++i) {
    QVector n = a.normal(i);
    if (x[i] == 0) {
      eq.push_back(std::move(n));
    } else {
      if (x[i] < 0)
        for (auto& v : n) v = -v;
      gt.push_back(std::move(n));
    }
  }
  return strictly_feasible(eq, gt, a.dim);
}

/// All faces (covectors) of an arrangement with an interior point for each.
struct FaceEnumeration {
  Arrangement arrangement;
  std::vector<SignVector> faces;
  std::vector<QVector> witness;
  /// rank of the face = rank(A) - rank(normals vanishing on it)
  std::vector<int> rank;
  std::vector<int> chambers;
  std::map<SignVector, int> index;

  int size() const { return static_cast<int>(faces.size()); }
  int find(const SignVector& x) const {
    auto it = index.find(x);
    return it == index.end() ? -1 : it->second;
  }
  std::uint32_t zero_mask(int f) const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < faces[f].size(); ++i)
      if (faces[f][i] == 0) m |= 1u << i;
    return m;
  }
  bool is_chamber(int f) const { return rank[f] == arrangement.rank(); }
  /// x <= y in the face order: y agrees with x wherever x is nonzero.
  bool leq(int x, int y) const {
    for (std::size_t i = 0; i < faces[x].size(); ++i)
      if (faces[x][i] != 0 && faces[x][i] != faces[y][i]) return false;
    return true;
  }
};

namespace detail {

struct PartialFace {
  SignVector signs;
  QVector point;
};

inline QVector scaled_sum(const std::vector<std::pair<Rational, const QVector*>>& terms, int dim) {
  QVector out(dim, Rational(0));
  for (const auto& [c, v] : terms)
    for (int i = 0; i < dim; ++i) out[i] += c * (*v)[i];
  return out;
}

}  // namespace detail

/// Inserts the hyperplanes one at a time. Each current face has an interior
/// point; the closure of a face is the lineality space plus the cone over the
/// rank-one faces below it, which decides which sides of the new hyperplane
/// it meets and yields interior points for the pieces.
inline FaceEnumeration enumerate_faces(const Arrangement& arr) {
  using detail::PartialFace;
  const int dim = arr.dim;
  std::vector<PartialFace> cur{{SignVector{}, QVector(dim, Rational(0))}};
  std::unordered_map<std::uint32_t, int> rank_cache;
  auto rank_of = [&](std::uint32_t m) {
    auto it = rank_cache.find(m);
    if (it != rank_cache.end()) return it->second;
    int r = arr.rank_of(m);
    rank_cache.emplace(m, r);
    return r;
  };

  for (int k = 0; k < arr.size(); ++k) {
    const QVector a = arr.normal(k);
    const std::uint32_t before = (1u << k) - 1u;
    const int r_before = rank_of(before);
    std::vector<PartialFace> next;
    auto zero_mask = [](const SignVector& s) {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == 0) m |= 1u << i;
      return m;
    };
    auto push = [&](const PartialFace& f, Sign s, QVector p) {
      PartialFace g{f.signs, std::move(p)};
      g.signs.push_back(s);
      if (std::any_of(g.point.begin(), g.point.end(), [](const Rational& x) { return x != 0; })) make_primitive(g.point);
      next.push_back(std::move(g));
    };

    if (rank_of(before | (1u << k)) > r_before) {
      // a is not constant on the lineality space: every face splits in three
      QMatrix lin = k == 0 ? QMatrix{} : nullspace(arr.rows(before), dim);
      if (k == 0)
        for (int i = 0; i < dim; ++i) {
          QVector e(dim, Rational(0));
          e[i] = 1;
          lin.push_back(e);
        }
      const QVector* w = nullptr;
      for (const auto& v : lin)
        if (dot(a, v) != 0) {
          w = &v;
          break;
        }
      if (w == nullptr) fail(ErrorKind::RealizabilityFailure, "no direction separating hyperplane " + std::to_string(k + 1));
      Rational aw = dot(a, *w);
      for (const auto& f : cur) {
        Rational t = dot(a, f.point);
        QVector p0 = f.point;
        for (int i = 0; i < dim; ++i) p0[i] -= (t / aw) * (*w)[i];
        QVector pp = p0, pn = p0;
        for (int i = 0; i < dim; ++i) {
          pp[i] += (*w)[i] / aw;
          pn[i] -= (*w)[i] / aw;
        }
        push(f, 1, pp);
        push(f, 0, p0);
        push(f, -1, pn);
      }
    } else {
      std::vector<int> rays;
      for (std::size_t i = 0; i < cur.size(); ++i)
        if (r_before - rank_of(zero_mask(cur[i].signs)) == 1) rays.push_back(static_cast<int>(i));
      std::vector<Rational> ray_val(rays.size());
      for (std::size_t j = 0; j < rays.size(); ++j) ray_val[j] = dot(a, cur[rays[j]].point);
      for (const auto& f : cur) {
        std::vector<std::size_t> below;
        for (std::size_t j = 0; j < rays.size(); ++j) {
          const SignVector& y = cur[rays[j]].signs;
          bool le = true;
          for (std::size_t i = 0; i < y.size() && le; ++i)
            if (y[i] != 0 && y[i] != f.signs[i]) le = false;
          if (le) below.push_back(j);
        }
        Rational pos = 0, neg = 0;
        for (std::size_t j : below) {
          if (ray_val[j] > 0) pos += ray_val[j];
          if (ray_val[j] < 0) neg -= ray_val[j];
        }
        if (pos == 0 || neg == 0) {
          Sign s = pos > 0 ? 1 : (neg > 0 ? -1 : 0);
          if (sign_of(dot(a, f.point)) != s)
            fail(ErrorKind::RealizabilityFailure, "interior point of " + sign_string(f.signs) + " has the wrong side of hyperplane " + std::to_string(k + 1));
          push(f, s, f.point);
          continue;
        }
        Rational alpha = neg / pos;
        for (auto [s, c] : {std::pair<Sign, Rational>{1, 2 * alpha}, {0, alpha}, {-1, alpha / 2}}) {
          std::vector<std::pair<Rational, const QVector*>> terms;
          for (std::size_t j : below) terms.emplace_back(ray_val[j] > 0 ? c : Rational(1), &cur[rays[j]].point);
          push(f, s, detail::scaled_sum(terms, dim));
        }
      }
    }
    cur = std::move(next);
  }

  FaceEnumeration out;
  out.arrangement = arr;
  const int r = arr.rank();
  std::vector<std::pair<std::pair<int, std::string>, std::size_t>> order;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    std::uint32_t m = 0;
    for (std::size_t j = 0; j < cur[i].signs.size(); ++j)
      if (cur[i].signs[j] == 0) m |= 1u << j;
    order.push_back({{r - rank_of(m), sign_string(cur[i].signs)}, i});
  }
  std::sort(order.begin(), order.end());
  long long euler = 0;
  for (const auto& [key, i] : order) {
    int id = out.size();
    out.faces.push_back(cur[i].signs);
    out.witness.push_back(cur[i].point);
    out.rank.push_back(key.first);
    if (!out.index.emplace(cur[i].signs, id).second) fail(ErrorKind::RealizabilityFailure, "face " + key.second + " produced twice");
    if (key.first == r) out.chambers.push_back(id);
    euler += (key.first % 2 == 1) ? 1 : -1;
  }
  for (int f = 0; f < out.size(); ++f)
    for (int i = 0; i < arr.size(); ++i)
      if (sign_of(dot(arr.normal(i), out.witness[f])) != out.faces[f][i])
        fail(ErrorKind::RealizabilityFailure, "interior point check failed for " + sign_string(out.faces[f]));
  long long expect = (r % 2 == 1) ? 1 : -1;
  if (euler != expect)
    fail(ErrorKind::EulerMismatch, "alternating face count " + std::to_string(euler) + ", expected " + std::to_string(expect));
  return out;
}

/// Hyperplanes supporting a facet of the chamber.
inline std::vector<int> chamber_walls(const FaceEnumeration& fe, int chamber) {
  std::vector<int> walls;
  for (int i = 0; i < fe.arrangement.size(); ++i) {
    SignVector x = fe.faces[chamber];
    x[i] = 0;
    int f = fe.find(x);
    if (f >= 0 && fe.rank[f] == fe.arrangement.rank() - 1) walls.push_back(i);
  }
  return walls;
}

struct SimplicialityResult {
  bool simplicial = true;
  std::optional<int> witness;
};

/// Every chamber has exactly rank walls with independent normals.
inline SimplicialityResult is_simplicial(const FaceEnumeration& fe) {
  const int r = fe.arrangement.rank();
  for (int c : fe.chambers) {
    auto walls = chamber_walls(fe, c);
    std::uint32_t m = 0;
    for (int w : walls) m |= 1u << w;
    if (static_cast<int>(walls.size()) != r || fe.arrangement.rank_of(m) != r) return {false, c};
  }
  return {};
}

/// The simplicial complex of a simplicial arrangement: vertices are the
/// rank-one faces, named by sign vector; chambers carry their sign vectors as
/// names. Types are propagated across adjacent chambers; if that fails the
/// complex is left unlabelled.
struct ArrangementComplex {
  Complex complex;
  /// arrangement face id of each complex face, and the reverse
  std::vector<int> arr_face;
  std::vector<FaceId> cx_face;
  /// arrangement face id of each complex chamber
  std::vector<int> arr_chamber;
};

inline ArrangementComplex arrangement_complex(const FaceEnumeration& fe, bool want_labels = true) {
  auto simp = is_simplicial(fe);
  if (!simp.simplicial) fail(ErrorKind::NotSimplicial, "chamber " + sign_string(fe.faces[*simp.witness]) + " is not a simplicial cone");
  const int r = fe.arrangement.rank();
  std::vector<int> rays;
  std::vector<int> vertex_of(fe.size(), -1);
  ComplexInput in;
  for (int f = 0; f < fe.size(); ++f)
    if (fe.rank[f] == 1) {
      vertex_of[f] = static_cast<int>(rays.size());
      rays.push_back(f);
      in.vertex_names.push_back(sign_string(fe.faces[f]));
    }
  for (int c : fe.chambers) {
    std::vector<VertexId> vs;
    for (int v = 0; v < static_cast<int>(rays.size()); ++v)
      if (fe.leq(rays[v], c)) vs.push_back(v);
    if (static_cast<int>(vs.size()) != r) fail(ErrorKind::NotSimplicial, "chamber " + sign_string(fe.faces[c]) + " has " + std::to_string(vs.size()) + " rays");
    in.chambers.push_back(vs);
    in.chamber_names.push_back(sign_string(fe.faces[c]));
  }

  if (want_labels) {
    std::vector<int> type(rays.size(), -1);
    const int nc = static_cast<int>(in.chambers.size());
    std::map<std::vector<VertexId>, std::vector<int>> by_facet;
    for (int c = 0; c < nc; ++c)
      for (int i = 0; i < r; ++i) {
        std::vector<VertexId> facet;
        for (int j = 0; j < r; ++j)
          if (j != i) facet.push_back(in.chambers[c][j]);
        by_facet[facet].push_back(c);
      }
    bool ok = true;
    std::vector<char> seen(nc, 0);
    for (int i = 0; i < r; ++i) type[in.chambers[0][i]] = i;
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty() && ok) {
      int c = q.front();
      q.pop();
      for (int i = 0; i < r && ok; ++i) {
        std::vector<VertexId> facet;
        for (int j = 0; j < r; ++j)
          if (j != i) facet.push_back(in.chambers[c][j]);
        for (int d : by_facet[facet]) {
          if (d == c) continue;
          for (VertexId v : in.chambers[d]) {
            if (std::find(facet.begin(), facet.end(), v) != facet.end()) continue;
            int t = type[in.chambers[c][i]];
            if (type[v] == -1)
              type[v] = t;
            else if (type[v] != t)
              ok = false;
          }
          if (!seen[d]) {
            seen[d] = 1;
            q.push(d);
          }
        }
      }
    }
    if (ok && std::find(type.begin(), type.end(), -1) == type.end()) {
      std::vector<int> rename(r, -1);
      int next = 0;
      for (int t : type)
        if (rename[t] < 0) rename[t] = next++;
      for (int t : type) in.vertex_types.push_back(std::to_string(rename[t] + 1));
    }
  }

  ArrangementComplex out{build_complex(in), {}, std::vector<FaceId>(fe.size(), -1), fe.chambers};
  const Complex& cx = out.complex;
  out.arr_face.assign(cx.num_faces(), -1);
  for (int f = 0; f < fe.size(); ++f) {
    std::vector<VertexId> vs;
    for (int v = 0; v < static_cast<int>(rays.size()); ++v)
      if (fe.leq(rays[v], f)) vs.push_back(v);
    auto id = cx.find_face(vs);
    if (!id || out.arr_face[*id] != -1 || cx.face_rank(*id) != fe.rank[f])
      fail(ErrorKind::LemmaViolation, "face " + sign_string(fe.faces[f]) + " does not match a unique simplex");
    out.cx_face[f] = *id;
    out.arr_face[*id] = f;
  }
  if (cx.num_faces() != fe.size()) fail(ErrorKind::LemmaViolation, "arrangement and complex face counts differ");
  return out;
}

}  // namespace shellax
