#pragma once

#include "shellax/arrangement.hpp"
#include "shellax/bits.hpp"
#include "shellax/error.hpp"
#include "shellax/poset.hpp"
#include "shellax/report.hpp"
#include "shellax/structures.hpp"
#include "shellax/util.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace shellax {

/// Finite semigroup given by its product table, with an identity element.
class Lrb {
 public:
  int size() const { return static_cast<int>(names_.size()); }
  int mul(int x, int y) const { return table_[static_cast<std::size_t>(x) * size() + y]; }
  int identity() const { return identity_; }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int find(const std::string& n) const {
    auto it = index_.find(n);
    return it == index_.end() ? -1 : it->second;
  }
  int parse(const std::string& n) const {
    int x = find(n);
    if (x < 0) fail(ErrorKind::ParseError, "unknown element '" + n + "'");
    return x;
  }

  /// Support preorder: supp x <= supp y iff y x = y.
  bool supp_le(int x, int y) const { return mul(y, x) == y; }
  /// Face order: x <= y iff x y = y.
  bool leq(int x, int y) const { return mul(x, y) == y; }

  /// Support class of each element and the order between classes.
  int supp(int x) const { return supp_[x]; }
  int num_supports() const { return static_cast<int>(class_rep_.size()); }
  int support_rep(int s) const { return class_rep_[s]; }
  bool support_le(int s, int t) const { return supp_le(class_rep_[s], class_rep_[t]); }
  int top_support() const { return top_; }

  /// Elements of maximal support, in id order.
  const std::vector<int>& chambers() const { return chambers_; }
  int chamber_index(int x) const { return chamber_index_[x]; }
  bool is_chamber(int x) const { return chamber_index_[x] >= 0; }

  friend Lrb make_lrb(std::vector<std::string> names, std::vector<int> table);

 private:
  std::vector<std::string> names_;
  std::vector<int> table_;
  std::unordered_map<std::string, int> index_;
  int identity_ = -1;
  std::vector<int> supp_;
  std::vector<int> class_rep_;
  int top_ = -1;
  std::vector<int> chambers_;
  std::vector<int> chamber_index_;
};

inline constexpr int kMaxLrbElements = 4000;

inline Lrb make_lrb(std::vector<std::string> names, std::vector<int> table) {
  Lrb s;
  const int n = static_cast<int>(names.size());
  if (n == 0) fail(ErrorKind::EmptyInput, "no elements");
  if (n > kMaxLrbElements) fail(ErrorKind::ScaleExceeded, std::to_string(n) + " elements exceed " + std::to_string(kMaxLrbElements));
  if (table.size() != static_cast<std::size_t>(n) * n) fail(ErrorKind::Precondition, "product table has the wrong size");
  for (int z : table)
    if (z < 0 || z >= n) fail(ErrorKind::ParseError, "product table is not total");
  s.names_ = std::move(names);
  s.table_ = std::move(table);
  for (int x = 0; x < n; ++x)
    if (!s.index_.emplace(s.names_[x], x).second) fail(ErrorKind::ParseError, "duplicate element '" + s.names_[x] + "'");
  for (int e = 0; e < n && s.identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = s.mul(e, x) == x && s.mul(x, e) == x;
    if (ok) s.identity_ = e;
  }
  if (s.identity_ < 0) fail(ErrorKind::Precondition, "semigroup has no identity element");

  s.supp_.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (s.supp_[x] >= 0) continue;
    int id = static_cast<int>(s.class_rep_.size());
    s.class_rep_.push_back(x);
    for (int y = x; y < n; ++y)
      if (s.supp_[y] < 0 && s.supp_le(x, y) && s.supp_le(y, x)) s.supp_[y] = id;
  }
  for (int c = 0; c < s.num_supports(); ++c) {
    bool top = true;
    for (int d = 0; d < s.num_supports() && top; ++d) top = s.support_le(d, c);
    if (top) s.top_ = c;
  }
  if (s.top_ < 0) fail(ErrorKind::Precondition, "support preorder has no maximum");
  s.chamber_index_.assign(n, -1);
  for (int x = 0; x < n; ++x)
    if (s.supp_[x] == s.top_) {
      s.chamber_index_[x] = static_cast<int>(s.chambers_.size());
      s.chambers_.push_back(x);
    }
  return s;
}

/// Sequences without repeats, written "(2,1)" and "()".
inline std::string sequence_name(const std::vector<int>& w) {
  return "(" + join_map(w, ",", [](int x) { return std::to_string(x); }) + ")";
}

/// Concatenate, then drop later repeats.
inline std::vector<int> free_product(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> z = x;
  for (int a : y)
    if (std::find(z.begin(), z.end(), a) == z.end()) z.push_back(a);
  return z;
}

inline constexpr int kMaxFreeLrb = 6;

/// Free LRB on n generators: repeat-free words ordered by length, then
/// lexicographically.
inline Lrb free_lrb(int n) {
  if (n < 0) fail(ErrorKind::BadN, "negative generator count");
  if (n > kMaxFreeLrb) fail(ErrorKind::ScaleExceeded, "free LRB product table limited to n <= " + std::to_string(kMaxFreeLrb));
  std::vector<std::vector<int>> words{{}};
  for (std::size_t start = 0, len = 0; static_cast<int>(len) < n; ++len) {
    std::size_t end = words.size();
    for (std::size_t i = start; i < end; ++i)
      for (int a = 1; a <= n; ++a)
        if (std::find(words[i].begin(), words[i].end(), a) == words[i].end()) {
          auto w = words[i];
          w.push_back(a);
          words.push_back(std::move(w));
        }
    start = end;
  }
  std::map<std::vector<int>, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < words.size(); ++i) {
    index[words[i]] = static_cast<int>(i);
    names.push_back(sequence_name(words[i]));
  }
  const std::size_t m = words.size();
  std::vector<int> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = index.at(free_product(words[i], words[j]));
  return make_lrb(std::move(names), std::move(table));
}

/// Face semigroup of an arrangement. Products outside the face set raise
/// RealizabilityFailure.
inline Lrb arrangement_lrb(const FaceEnumeration& fe) {
  const int n = fe.size();
  std::vector<std::string> names;
  for (const auto& x : fe.faces) names.push_back(sign_string(x));
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int z = fe.find(sign_product(fe.faces[x], fe.faces[y]));
      if (z < 0) fail(ErrorKind::RealizabilityFailure, "product " + names[x] + "." + names[y] + " is not a face");
      table[static_cast<std::size_t>(x) * n + y] = z;
    }
  return make_lrb(std::move(names), std::move(table));
}

/// `elem <name>` and `prod <x> <y> -> <z>` lines.
inline Lrb parse_lrb(std::istream& in) {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  std::vector<std::array<std::string, 3>> prods;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] == "elem" && t.size() == 2) {
      if (!index.emplace(t[1], static_cast<int>(names.size())).second)
        fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": duplicate element '" + t[1] + "'");
      names.push_back(t[1]);
    } else if (t[0] == "prod" && t.size() == 5 && t[3] == "->") {
      prods.push_back({t[1], t[2], t[4]});
    } else {
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'elem <name>' or 'prod <x> <y> -> <z>'");
    }
  }
  const std::size_t n = names.size();
  std::vector<int> table(n * n, -1);
  auto id = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) fail(ErrorKind::ParseError, "undeclared element '" + s + "'");
    return it->second;
  };
  for (const auto& p : prods) {
    int& slot = table[static_cast<std::size_t>(id(p[0])) * n + id(p[1])];
    int z = id(p[2]);
    if (slot >= 0 && slot != z) fail(ErrorKind::ParseError, "conflicting products for " + p[0] + " " + p[1]);
    slot = z;
  }
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] < 0) fail(ErrorKind::ParseError, "missing product " + names[i / n] + " " + names[i % n]);
  return make_lrb(std::move(names), std::move(table));
}

inline void write_lrb(std::ostream& out, const Lrb& s) {
  for (int x = 0; x < s.size(); ++x) out << "elem " << s.name(x) << '\n';
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) out << "prod " << s.name(x) << ' ' << s.name(y) << " -> " << s.name(s.mul(x, y)) << '\n';
}

/// Rank of each support class: longest chain from the bottom. Throws
/// NotGraded if some cover relation skips a rank.
inline std::vector<int> support_ranks(const Lrb& s) {
  const int m = s.num_supports();
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  // a linear extension: sort by the number of classes below
  std::vector<int> below(m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (s.support_le(b, a)) ++below[a];
  std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a] < below[b]; });
  std::vector<int> rank(m, 0);
  auto covers = [&](int a, int b) {
    if (a == b || !s.support_le(a, b)) return false;
    for (int c = 0; c < m; ++c)
      if (c != a && c != b && s.support_le(a, c) && s.support_le(c, b)) return false;
    return true;
  };
  for (int b : order)
    for (int a = 0; a < m; ++a)
      if (covers(a, b)) rank[b] = std::max(rank[b], rank[a] + 1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (covers(a, b) && rank[b] != rank[a] + 1)
        fail(ErrorKind::NotGraded, "support of " + s.name(s.support_rep(b)) + " covers support of " + s.name(s.support_rep(a)) +
                                       " but the ranks are " + std::to_string(rank[b]) + " and " + std::to_string(rank[a]));
  return rank;
}

/// Element ranks through the support lattice.
inline std::vector<int> element_ranks(const Lrb& s) {
  auto r = support_ranks(s);
  std::vector<int> out(s.size());
  for (int x = 0; x < s.size(); ++x) out[x] = r[s.supp(x)];
  return out;
}

/// Face poset x <= y iff xy = y, with the maximal-support elements as chambers.
inline FacePoset lrb_poset(const Lrb& s) {
  FacePoset p;
  const int n = s.size();
  p.names = s.names();
  p.up.assign(n, Bits(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (s.leq(x, y)) p.up[x].set(y);
  p.bottom = s.identity();
  p.chamber_of.assign(n, -1);
  for (int c : s.chambers()) {
    p.chamber_of[c] = static_cast<int>(p.chambers.size());
    p.chambers.push_back(c);
    p.chamber_names.push_back(s.name(c));
  }
  for (int c : s.chambers()) {
    std::vector<int> fs;
    for (int g = 0; g < n; ++g) {
      if (g == c || !s.leq(g, c)) continue;
      bool cover = true;
      for (int h = 0; h < n && cover; ++h)
        if (h != g && h != c && s.leq(g, h) && s.leq(h, c)) cover = false;
      if (cover) fs.push_back(g);
    }
    p.facets.push_back(std::move(fs));
  }
  for (int x = 0; x < n; ++x) {
    Bits r(s.chambers().size());
    for (int c : s.chambers())
      if (s.leq(x, c)) r.set(s.chamber_index(c));
    p.residue.push_back(std::move(r));
  }
  return p;
}

/// FC = F * C, indexed by element and chamber index.
inline ProjectionTable lrb_projection(const Lrb& s) {
  const int nc = static_cast<int>(s.chambers().size());
  ProjectionTable t(s.size(), nc);
  for (int f = 0; f < s.size(); ++f)
    for (int c = 0; c < nc; ++c) {
      int z = s.mul(f, s.chambers()[c]);
      if (!s.is_chamber(z)) fail(ErrorKind::LemmaViolation, "product " + s.name(f) + "." + s.name(s.chambers()[c]) + " is not a chamber");
      t(f, c) = s.chamber_index(z);
    }
  return t;
}

/// Band identities and the support homomorphism, then the projection axioms
/// on the face poset.
inline Report check_lrb(const Lrb& s) {
  Report r;
  const int n = s.size();
  for (const char* id : {"LRB.idempotent", "LRB.associative", "LRB.deletion", "LRB.supp.join", "LRB.supp.absorb", "LRB.order", "LRB.chamber.ideal",
                         "LRB.hypothesis"})
    r.declare(id);
  for (int x = 0; x < n; ++x)
    if (s.mul(x, x) != x) r.fail("LRB.idempotent", "x=" + s.name(x) + " xx=" + s.name(s.mul(x, x)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int xy = s.mul(x, y);
      for (int z = 0; z < n; ++z)
        if (s.mul(xy, z) != s.mul(x, s.mul(y, z))) {
          r.fail("LRB.associative", "x=" + s.name(x) + " y=" + s.name(y) + " z=" + s.name(z));
          break;
        }
      if (s.mul(xy, x) != xy) r.fail("LRB.deletion", "x=" + s.name(x) + " y=" + s.name(y) + " xyx=" + s.name(s.mul(xy, x)) + " xy=" + s.name(xy));
      if (s.supp_le(y, x) && xy != x) r.fail("LRB.supp.absorb", "x=" + s.name(x) + " y=" + s.name(y) + " xy=" + s.name(xy));
      if (!s.leq(x, xy)) r.fail("LRB.hypothesis", "F=" + s.name(x) + " F'=" + s.name(y));
    }
  // supp xy is the least upper bound of supp x and supp y
  const int m = s.num_supports();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int j = s.supp(s.mul(x, y));
      bool ok = s.support_le(s.supp(x), j) && s.support_le(s.supp(y), j);
      for (int z = 0; z < m && ok; ++z)
        if (s.support_le(s.supp(x), z) && s.support_le(s.supp(y), z) && !s.support_le(j, z)) ok = false;
      if (!ok) r.fail("LRB.supp.join", "x=" + s.name(x) + " y=" + s.name(y));
    }
  BitMatrix le(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (s.leq(x, y)) le.set(x, y);
  if (auto v = antisymmetry_violation(le))
    r.fail("LRB.order", "not antisymmetric at " + s.name(static_cast<int>(v->first)) + " " + s.name(static_cast<int>(v->second)));
  else if (reflexive_transitive_closure(le) != le)
    r.fail("LRB.order", "not transitive");
  for (int x = 0; x < n; ++x)
    for (int c : s.chambers())
      if (!s.is_chamber(s.mul(x, c))) r.fail("LRB.chamber.ideal", "x=" + s.name(x) + " C=" + s.name(c));
  if (!r.all_passed()) return r;
  r.merge(check_P(lrb_poset(s), lrb_projection(s)));
  return r;
}

}  // namespace shellax
