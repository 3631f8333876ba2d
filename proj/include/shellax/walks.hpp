#pragma once

#include "shellax/arrangement.hpp"
#include "shellax/flags.hpp"
#include "shellax/linalg.hpp"
#include "shellax/lrb.hpp"
#include "shellax/report.hpp"
#include "shellax/structures.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace shellax {

/// Elements with ranks (and types on labelled complexes) and a product that
/// may be partial. A full LRB defines every product; a projection table only
/// F * C and C * F for chambers C (the latter is C).
class SigmaSource {
 public:
  static SigmaSource from_lrb(const Lrb& s) {
    SigmaSource src;
    src.lrb_ = &s;
    src.rank_ = element_ranks(s);
    src.top_ = *std::max_element(src.rank_.begin(), src.rank_.end());
    for (int x = 0; x < s.size(); ++x) src.names_.push_back(s.name(x));
    src.chambers_ = s.chambers();
    src.chamber_index_.assign(s.size(), -1);
    for (std::size_t i = 0; i < src.chambers_.size(); ++i) src.chamber_index_[src.chambers_[i]] = static_cast<int>(i);
    return src;
  }

  static SigmaSource from_projection(const Complex& cx, const ProjectionTable& p) {
    SigmaSource src;
    src.cx_ = &cx;
    src.proj_ = &p;
    src.top_ = cx.rank();
    for (FaceId f = 0; f < cx.num_faces(); ++f) {
      src.names_.push_back(cx.face_name(f));
      src.rank_.push_back(cx.face_rank(f));
      if (cx.labelled()) src.type_.push_back(cx.type_mask(f));
    }
    src.chamber_index_.assign(cx.num_faces(), -1);
    for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
      src.chambers_.push_back(cx.chamber_face(c));
      src.chamber_index_[cx.chamber_face(c)] = c;
    }
    return src;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int x) const { return names_[x]; }
  int rank(int x) const { return rank_[x]; }
  int top_rank() const { return top_; }
  bool labelled() const { return !type_.empty(); }
  unsigned type(int x) const { return type_[x]; }
  int num_labels() const { return cx_ ? cx_->num_labels() : 0; }
  bool full() const { return lrb_ != nullptr; }
  const std::vector<int>& chambers() const { return chambers_; }
  int chamber_index(int x) const { return chamber_index_[x]; }
  const Lrb* lrb() const { return lrb_; }

  bool defined(int x, int y) const { return full() || chamber_index_[x] >= 0 || chamber_index_[y] >= 0; }

  int product(int x, int y) const {
    if (lrb_) return lrb_->mul(x, y);
    if (chamber_index_[x] >= 0) return x;
    int c = chamber_index_[y];
    if (c < 0) fail(ErrorKind::ProductUndefined, "projection structure has no product " + names_[x] + " * " + names_[y]);
    return chambers_[(*proj_)(x, c)];
  }

  /// Elements of a rank class, or of a type class on labelled sources.
  std::vector<int> rank_class(int i) const {
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (rank_[x] == i) out.push_back(x);
    return out;
  }
  std::vector<int> type_class(unsigned j) const {
    if (!labelled()) fail(ErrorKind::NeedsLabels, "type classes need a labelled complex");
    std::vector<int> out;
    for (int x = 0; x < size(); ++x)
      if (type_[x] == j) out.push_back(x);
    return out;
  }

 private:
  const Lrb* lrb_ = nullptr;
  const Complex* cx_ = nullptr;
  const ProjectionTable* proj_ = nullptr;
  std::vector<std::string> names_;
  std::vector<int> rank_;
  std::vector<unsigned> type_;
  std::vector<int> chambers_;
  std::vector<int> chamber_index_;
  int top_ = 0;
};

/// Coefficient of every element in (sum of left) * (sum of right).
inline std::vector<long long> sigma_product(const SigmaSource& s, const std::vector<int>& left, const std::vector<int>& right) {
  std::vector<long long> coef(s.size(), 0);
  for (int x : left)
    for (int y : right) {
      if (!s.defined(x, y)) fail(ErrorKind::ProductUndefined, "product " + s.name(x) + " * " + s.name(y) + " is not defined");
      ++coef[s.product(x, y)];
    }
  return coef;
}

/// All rank-class products of a full LRB in one pass: coef[i][j][z].
inline std::vector<std::vector<std::vector<long long>>> all_rank_products(const SigmaSource& s) {
  const int n = s.top_rank();
  std::vector<std::vector<std::vector<long long>>> coef(n + 1, std::vector<std::vector<long long>>(n + 1, std::vector<long long>(s.size(), 0)));
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (s.defined(x, y)) ++coef[s.rank(x)][s.rank(y)][s.product(x, y)];
  return coef;
}

inline std::string sigma_id(int i, int j) { return "C[" + std::to_string(i) + "," + std::to_string(j) + "]"; }

inline std::string first_difference(const SigmaSource& s, const std::vector<long long>& a, const std::vector<long long>& b) {
  for (int z = 0; z < s.size(); ++z)
    if (a[z] != b[z]) return s.name(z) + ": " + std::to_string(a[z]) + " vs " + std::to_string(b[z]);
  return {};
}

/// C[i,j]: sigma_i sigma_j = sigma_j sigma_i, for every pair the source can
/// multiply. Labelled mode compares sigma_J sigma_I with sigma_I sigma_J.
inline Report check_commutativity(const SigmaSource& s, bool labelled) {
  Report r;
  const int n = s.top_rank();
  if (labelled) {
    if (!s.labelled()) fail(ErrorKind::NeedsLabels, "labelled commutativity needs a labelled complex");
    const unsigned all = (1u << s.num_labels()) - 1u;
    auto chambers = s.type_class(all);
    for (unsigned j = 0; j < all; ++j) {
      auto cls = s.type_class(j);
      auto a = sigma_product(s, cls, chambers);
      auto b = sigma_product(s, chambers, cls);
      std::string id = "C[" + std::to_string(j) + ",I]";
      r.expect(id, a == b, first_difference(s, a, b));
    }
    return r;
  }
  if (s.full()) {
    auto coef = all_rank_products(s);
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) r.expect(sigma_id(i, j), coef[i][j] == coef[j][i], first_difference(s, coef[i][j], coef[j][i]));
    return r;
  }
  auto chambers = s.rank_class(n);
  for (int i = 0; i < n; ++i) {
    auto cls = s.rank_class(i);
    auto a = sigma_product(s, cls, chambers);
    auto b = sigma_product(s, chambers, cls);
    r.expect(sigma_id(i, n), a == b, first_difference(s, a, b));
  }
  return r;
}

/// Commutation with the chambers against constancy of the local flag
/// vectors: sigma_J sigma_I = sigma_I sigma_J for all J iff h_J(D) = h_J for
/// all D. The two sides are computed separately.
inline Report check_equidistribution(const Complex& cx, const ProjectionTable& p, bool labelled) {
  Report r;
  SigmaSource s = SigmaSource::from_projection(cx, p);
  Report comm = check_commutativity(s, labelled);
  bool commutes = comm.all_passed();
  LocalFlagTable t = local_flags(cx, p_to_r(cx, p), labelled);
  FlagVector h = flag_vectors(cx, labelled).h;
  std::optional<std::string> uneven;
  for (ChamberId d = 0; d < cx.num_chambers() && !uneven; ++d)
    for (std::size_t j = 0; j < h.size(); ++j)
      if (t.h[d][j] != h[j]) {
        uneven = "D=" + cx.chamber_name(d) + " J=" + flag_index_name(cx, h, j);
        break;
      }
  r.merge(comm);
  r.info("EQUI.local", uneven ? "varies at " + *uneven : "constant");
  if (commutes != !uneven.has_value())
    r.fail_internal("EQUI", std::string("commutation ") + (commutes ? "holds" : "fails") + " but local flags " + (uneven ? "vary" : "are constant"));
  else
    r.declare("EQUI");
  return r;
}

/// Condition U on every S_{<=X}, the implication to commutativity, support
/// invariance of coefficients and the FG/GF chamber symmetry.
inline Report check_uniformity(const SigmaSource& s) {
  if (!s.full()) fail(ErrorKind::ProductUndefined, "uniformity needs a full product table");
  const Lrb& lrb = *s.lrb();
  Report r;
  const int n = s.top_rank();
  auto global = all_rank_products(s);
  auto ranks = support_ranks(lrb);
  for (const char* id : {"U", "U.all", "U.implies.C", "SUPP.invariance", "FG.chamber"}) r.declare(id);

  bool u_all = true;
  for (int X = 0; X < lrb.num_supports(); ++X) {
    std::vector<int> members, top;
    for (int x = 0; x < s.size(); ++x)
      if (lrb.support_le(lrb.supp(x), X)) {
        members.push_back(x);
        if (lrb.supp(x) == X) top.push_back(x);
      }
    const int rx = ranks[X];
    std::vector<std::vector<std::vector<long long>>> local(rx + 1, std::vector<std::vector<long long>>(rx + 1, std::vector<long long>(s.size(), 0)));
    for (int x : members)
      for (int y : members) ++local[s.rank(x)][s.rank(y)][s.product(x, y)];
    for (int i = 0; i <= rx; ++i)
      for (int j = 0; j <= rx; ++j) {
        for (int z : members)
          if (lrb.supp(z) == X && local[i][j][z] != global[i][j][z])
            r.fail("SUPP.invariance", "H=" + s.name(z) + " i=" + std::to_string(i) + " j=" + std::to_string(j));
        for (int z : top)
          if (local[i][j][z] != local[i][j][top.front()]) {
            std::string w = "X=" + s.name(lrb.support_rep(X)) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + " " + s.name(top.front()) + ":" +
                            std::to_string(local[i][j][top.front()]) + " " + s.name(z) + ":" + std::to_string(local[i][j][z]);
            if (X == lrb.top_support()) r.fail("U", w);
            r.fail("U.all", w);
            u_all = false;
            break;
          }
      }
  }
  bool c_all = true;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (global[i][j] != global[j][i]) c_all = false;
  r.info("U.all", u_all ? "holds" : "fails");
  r.info("C.all", c_all ? "holds" : "fails");
  if (u_all && !c_all) r.fail_internal("U.implies.C", "U holds on every S_{<=X} but some C[i,j] fails");

  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (lrb.is_chamber(s.product(x, y)) != lrb.is_chamber(s.product(y, x)))
        r.fail("FG.chamber", "F=" + s.name(x) + " G=" + s.name(y));
  return r;
}

// ---- random walks -----------------------------------------------------------------

using FaceWeights = std::vector<std::pair<int, Rational>>;

struct WalkChain {
  /// P[C][D]
  std::vector<std::vector<Rational>> P;
  std::vector<Rational> pi;
  bool uniform = false;
  /// (sum w_F F) sigma_top = sigma_top (sum w_F F)
  bool commutes = false;
  Report report;
};

/// Strongly connected components of the positive-transition graph that no
/// transition leaves.
inline std::vector<std::vector<int>> closed_classes(const std::vector<std::vector<Rational>>& P) {
  const int n = static_cast<int>(P.size());
  BitMatrix gen(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (P[i][j] > 0) gen.set(i, j);
  BitMatrix reach = reflexive_transitive_closure(gen);
  std::vector<std::vector<int>> out;
  std::vector<char> done(n, 0);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::vector<int> cls;
    for (int j = 0; j < n; ++j)
      if (reach.test(i, j) && reach.test(j, i)) cls.push_back(j);
    for (int j : cls) done[j] = 1;
    bool closed = true;
    for (int j : cls)
      if ((reach.rows[j].count()) != cls.size()) closed = false;
    if (closed) out.push_back(cls);
  }
  return out;
}

inline std::string rational_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  return num.str() + "/" + den.str();
}

/// P(C,D) = sum of w_F over F with FC = D, its exact stationary distribution
/// and the uniformity criterion.
inline WalkChain walk(const SigmaSource& s, const FaceWeights& w) {
  Rational total = 0;
  for (const auto& [f, x] : w) {
    if (f < 0 || f >= s.size()) fail(ErrorKind::Precondition, "weight on an unknown element");
    if (x < 0) fail(ErrorKind::Precondition, "negative weight on " + s.name(f));
    total += x;
  }
  if (total != 1) fail(ErrorKind::Precondition, "weights sum to " + rational_string(total) + ", not 1");
  const auto& ch = s.chambers();
  const int nc = static_cast<int>(ch.size());
  WalkChain out;
  out.P.assign(nc, std::vector<Rational>(nc, Rational(0)));
  for (int c = 0; c < nc; ++c)
    for (const auto& [f, x] : w) out.P[c][s.chamber_index(s.product(f, ch[c]))] += x;

  auto classes = closed_classes(out.P);
  if (classes.size() != 1) {
    std::string parts;
    for (const auto& cls : classes) parts += " {" + join_map(cls, ",", [&](int c) { return s.name(ch[c]); }) + "}";
    fail(ErrorKind::ReducibleChain, std::to_string(classes.size()) + " closed classes:" + parts);
  }
  const auto& K = classes.front();
  const int k = static_cast<int>(K.size());
  QMatrix m(k + 1, QVector(k + 1, Rational(0)));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m[b][a] = out.P[K[a]][K[b]] - (a == b ? 1 : 0);
  for (int a = 0; a < k; ++a) m[k][a] = 1;
  m[k][k] = 1;
  auto piv = row_reduce(m, k + 1);
  if (static_cast<int>(piv.size()) != k || piv.back() != k - 1) fail(ErrorKind::LemmaViolation, "stationary system is singular on a closed class");
  out.pi.assign(nc, Rational(0));
  for (int a = 0; a < k; ++a) out.pi[K[a]] = m[a][k];

  out.uniform = true;
  for (int c = 0; c < nc; ++c)
    if (out.pi[c] != Rational(1, nc)) out.uniform = false;
  // weighted sigma products against the sum of all chambers
  std::vector<Rational> left(s.size(), Rational(0)), right(s.size(), Rational(0));
  for (const auto& [f, x] : w)
    for (int c : ch) {
      left[s.product(f, c)] += x;
      right[s.product(c, f)] += x;
    }
  out.commutes = left == right;
  out.report.info("walk.closed_class_size", std::to_string(k));
  out.report.info("walk.uniform", out.uniform ? "yes" : "no");
  out.report.info("walk.commutes", out.commutes ? "yes" : "no");
  if (out.uniform != out.commutes)
    out.report.fail_internal("WALK.uniform.iff", "stationary distribution and sigma commutation disagree");
  else
    out.report.declare("WALK.uniform.iff");
  return out;
}

/// Uniform weights on one rank class.
inline FaceWeights uniform_rank_weights(const SigmaSource& s, int rank) {
  auto cls = s.rank_class(rank);
  if (cls.empty()) fail(ErrorKind::Precondition, "no elements of rank " + std::to_string(rank));
  FaceWeights w;
  for (int x : cls) w.emplace_back(x, Rational(1, static_cast<long long>(cls.size())));
  return w;
}

/// `w <element> <num>/<den>` lines; element names resolved by `resolve`.
template <class Resolve>
FaceWeights parse_weights(std::istream& in, Resolve&& resolve) {
  FaceWeights w;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokenize_line(line);
    if (t.empty()) continue;
    if (t.size() != 3 || t[0] != "w") fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 'w <face> <num>/<den>'");
    Rational x;
    try {
      x = Rational(t[2]);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad rational '" + t[2] + "'");
    }
    w.emplace_back(resolve(t[1]), x);
  }
  return w;
}

inline void write_stationary(std::ostream& out, const SigmaSource& s, const WalkChain& chain, Format fmt = Format::Text) {
  for (std::size_t c = 0; c < chain.pi.size(); ++c) {
    if (fmt == Format::Tsv)
      out << "pi\t" << s.name(s.chambers()[c]) << '\t' << rational_string(chain.pi[c]) << '\n';
    else
      out << "pi " << s.name(s.chambers()[c]) << " = " << rational_string(chain.pi[c]) << '\n';
  }
}

/// Rank-3 arrangements: simpliciality and C[1,2], C[1,3], C[2,3] decided
/// separately and required to agree, plus the vertex walk.
inline Report rank3_harness(const Arrangement& a) {
  if (a.rank() != 3) fail(ErrorKind::RankMismatch, "rank-3 harness needs rank 3, got " + std::to_string(a.rank()));
  FaceEnumeration fe = enumerate_faces(a);
  Lrb lrb = arrangement_lrb(fe);
  SigmaSource s = SigmaSource::from_lrb(lrb);
  bool simplicial = is_simplicial(fe).simplicial;
  Report comm = check_commutativity(s, false);
  Report r;
  r.info("chambers", std::to_string(fe.chambers.size()));
  r.info("simplicial", simplicial ? "yes" : "no");
  bool agree = true;
  for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    bool holds = comm.passed(sigma_id(i, j));
    r.info(sigma_id(i, j), holds ? "holds" : "fails");
    if (holds != simplicial) agree = false;
  }
  if (agree)
    r.declare("RANK3.equivalence");
  else
    r.fail_internal("RANK3.equivalence", "simpliciality and commutation conditions disagree");
  WalkChain chain = walk(s, uniform_rank_weights(s, 1));
  r.merge(chain.report);
  if (chain.uniform == simplicial)
    r.declare("RANK3.walk");
  else
    r.fail_internal("RANK3.walk", std::string("vertex walk is ") + (chain.uniform ? "" : "not ") + "uniform");
  return r;
}

}  // namespace shellax
