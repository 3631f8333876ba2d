#pragma once

#include "shellax/bits.hpp"
#include "shellax/error.hpp"
#include "shellax/report.hpp"
#include "shellax/util.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace shellax {

using VertexId = int;
using FaceId = int;
using ChamberId = int;

struct ComplexInput {
  std::vector<std::string> vertex_names;
  /// Empty for an unlabelled complex, else one type name per vertex.
  std::vector<std::string> vertex_types;
  std::vector<std::vector<VertexId>> chambers;
  /// Empty, or one name per chamber; blank entries get the default name.
  std::vector<std::string> chamber_names;
};

inline constexpr int kMaxRank = 12;
inline constexpr int kMaxChambers = 6000;

/// Finite pure simplicial complex. Rank of a face is its vertex count.
/// Faces are numbered by (rank, sorted vertex ids); face 0 is the empty face.
class Complex {
 public:
  int rank() const { return rank_; }
  int num_vertices() const { return static_cast<int>(vertex_name_.size()); }
  int num_faces() const { return static_cast<int>(face_vertices_.size()); }
  int num_chambers() const { return static_cast<int>(chamber_vertices_.size()); }
  bool labelled() const { return !labels_.empty(); }
  int num_labels() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }

  const std::string& vertex_name(VertexId v) const { return vertex_name_[v]; }
  int vertex_type(VertexId v) const { return vertex_type_[v]; }

  const std::vector<VertexId>& face_vertices(FaceId f) const { return face_vertices_[f]; }
  int face_rank(FaceId f) const { return static_cast<int>(face_vertices_[f].size()); }
  static constexpr FaceId empty_face() { return 0; }

  const std::vector<VertexId>& chamber_vertices(ChamberId c) const { return chamber_vertices_[c]; }
  const std::string& chamber_name(ChamberId c) const { return chamber_name_[c]; }
  FaceId chamber_face(ChamberId c) const { return chamber_face_[c]; }
  /// Chamber id of a face that is a chamber, else -1.
  ChamberId face_chamber(FaceId f) const { return face_chamber_[f]; }

  /// Face of chamber c spanned by the local vertex positions in `mask`.
  FaceId sub(ChamberId c, unsigned mask) const { return sub_[c][mask]; }
  unsigned full_mask() const { return (1u << rank_) - 1u; }
  /// Facet of chamber c opposite its local vertex position `pos`.
  FaceId facet(ChamberId c, int pos) const { return sub_[c][full_mask() ^ (1u << pos)]; }

  /// Local position mask of face f inside chamber c, or nullopt if f is not a face of c.
  std::optional<unsigned> local_mask(ChamberId c, FaceId f) const {
    unsigned m = 0;
    const auto& cv = chamber_vertices_[c];
    for (VertexId v : face_vertices_[f]) {
      auto it = std::lower_bound(cv.begin(), cv.end(), v);
      if (it == cv.end() || *it != v) return std::nullopt;
      m |= 1u << (it - cv.begin());
    }
    return m;
  }

  bool face_leq(FaceId f, FaceId g) const {
    const auto& a = face_vertices_[f];
    const auto& b = face_vertices_[g];
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }

  bool contains(ChamberId c, FaceId f) const { return residue_bits_[f].test(c); }

  /// Chambers containing f, ascending.
  const std::vector<ChamberId>& residue(FaceId f) const { return residue_[f]; }
  const Bits& residue_bits(FaceId f) const { return residue_bits_[f]; }

  /// Bitmask of label indices of f's vertices; requires labels.
  unsigned type_mask(FaceId f) const {
    if (!labelled()) fail(ErrorKind::NeedsLabels, "complex has no vertex types");
    unsigned m = 0;
    for (VertexId v : face_vertices_[f]) m |= 1u << vertex_type_[v];
    return m;
  }

  const std::vector<ChamberId>& adjacent(ChamberId c) const { return adjacent_[c]; }
  bool is_adjacent(ChamberId a, ChamberId b) const {
    return std::binary_search(adjacent_[a].begin(), adjacent_[a].end(), b);
  }

  /// Gallery distance, -1 when in different components.
  int dist(ChamberId a, ChamberId b) const { return dist_[static_cast<std::size_t>(a) * num_chambers() + b]; }
  bool connected() const { return connected_; }

  std::optional<FaceId> find_face(std::vector<VertexId> vs) const {
    std::sort(vs.begin(), vs.end());
    auto it = face_index_.find(vs);
    if (it == face_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }

  std::string face_name(FaceId f) const {
    if (face_vertices_[f].empty()) return "-";
    return join_map(face_vertices_[f], ",", [&](VertexId v) { return vertex_name_[v]; });
  }

  std::string label_set_name(unsigned mask) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < num_labels(); ++i)
      if (mask >> i & 1u) {
        if (!first) out += ",";
        out += labels_[i];
        first = false;
      }
    return out + "}";
  }

  /// Resolve "-" or a comma-joined vertex list to a face.
  FaceId parse_face(const std::string& s) const {
    if (s == "-" || s.empty()) return empty_face();
    std::vector<VertexId> vs;
    for (const auto& name : split(s, ',')) {
      auto v = find_vertex(name);
      if (!v) fail(ErrorKind::NotAFace, "unknown vertex '" + name + "'");
      vs.push_back(*v);
    }
    auto f = find_face(vs);
    if (!f) fail(ErrorKind::NotAFace, "'" + s + "' is not a face");
    return *f;
  }

  /// Resolve a chamber name or a comma-joined vertex list.
  ChamberId parse_chamber(const std::string& s) const {
    auto it = chamber_index_.find(s);
    if (it != chamber_index_.end()) return it->second;
    FaceId f = parse_face(s);
    if (face_chamber_[f] < 0) fail(ErrorKind::NotAFace, "'" + s + "' is not a chamber");
    return face_chamber_[f];
  }

  friend Complex build_complex(const ComplexInput& in);

 private:
  int rank_ = 0;
  std::vector<std::string> vertex_name_;
  std::vector<int> vertex_type_;
  std::vector<std::string> labels_;
  std::vector<std::vector<VertexId>> chamber_vertices_;
  std::vector<std::string> chamber_name_;
  std::vector<FaceId> chamber_face_;
  std::vector<std::vector<FaceId>> sub_;
  std::vector<std::vector<VertexId>> face_vertices_;
  std::vector<ChamberId> face_chamber_;
  std::vector<std::vector<ChamberId>> residue_;
  std::vector<Bits> residue_bits_;
  std::vector<std::vector<ChamberId>> adjacent_;
  std::vector<int> dist_;
  bool connected_ = true;
  std::map<std::vector<VertexId>, FaceId> face_index_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, ChamberId> chamber_index_;
};

inline Complex build_complex(const ComplexInput& in) {
  if (in.chambers.empty()) fail(ErrorKind::EmptyInput, "no chambers");
  Complex cx;
  cx.vertex_name_ = in.vertex_names;
  const int nv = static_cast<int>(in.vertex_names.size());
  for (int v = 0; v < nv; ++v)
    if (!cx.vertex_index_.emplace(in.vertex_names[v], v).second)
      fail(ErrorKind::ParseError, "duplicate vertex '" + in.vertex_names[v] + "'");

  cx.vertex_type_.assign(nv, -1);
  if (!in.vertex_types.empty()) {
    if (static_cast<int>(in.vertex_types.size()) != nv) fail(ErrorKind::BadLabelling, "type list size mismatch");
    std::unordered_map<std::string, int> label_index;
    for (int v = 0; v < nv; ++v) {
      const auto& t = in.vertex_types[v];
      if (t.empty()) fail(ErrorKind::BadLabelling, "vertex '" + in.vertex_names[v] + "' has no type");
      auto [it, fresh] = label_index.emplace(t, static_cast<int>(cx.labels_.size()));
      if (fresh) cx.labels_.push_back(t);
      cx.vertex_type_[v] = it->second;
    }
  }

  const int rank = static_cast<int>(in.chambers.front().size());
  if (rank < 1) fail(ErrorKind::NotPure, "chambers must be nonempty");
  if (rank > kMaxRank) fail(ErrorKind::ScaleExceeded, "rank " + std::to_string(rank) + " exceeds " + std::to_string(kMaxRank));
  if (static_cast<int>(in.chambers.size()) > kMaxChambers)
    fail(ErrorKind::ScaleExceeded, std::to_string(in.chambers.size()) + " chambers exceeds " + std::to_string(kMaxChambers));
  cx.rank_ = rank;

  std::set<std::vector<VertexId>> seen;
  for (std::size_t c = 0; c < in.chambers.size(); ++c) {
    std::vector<VertexId> vs = in.chambers[c];
    std::sort(vs.begin(), vs.end());
    if (static_cast<int>(vs.size()) != rank)
      fail(ErrorKind::NotPure, "chamber " + std::to_string(c) + " has " + std::to_string(vs.size()) + " vertices, expected " + std::to_string(rank));
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      fail(ErrorKind::ParseError, "chamber " + std::to_string(c) + " repeats a vertex");
    for (VertexId v : vs)
      if (v < 0 || v >= nv) fail(ErrorKind::ParseError, "chamber " + std::to_string(c) + " uses an unknown vertex");
    if (!seen.insert(vs).second) fail(ErrorKind::ParseError, "duplicate chamber " + std::to_string(c));
    if (cx.labelled()) {
      unsigned types = 0;
      for (VertexId v : vs) {
        unsigned bit = 1u << cx.vertex_type_[v];
        if (types & bit)
          fail(ErrorKind::BadLabelling, "chamber " + std::to_string(c) + " has two vertices of type " + cx.labels_[cx.vertex_type_[v]]);
        types |= bit;
      }
      if (static_cast<int>(cx.labels_.size()) != rank)
        fail(ErrorKind::BadLabelling, "label set has " + std::to_string(cx.labels_.size()) + " types but rank is " + std::to_string(rank));
    }
    cx.chamber_vertices_.push_back(std::move(vs));
  }

  // faces, ordered by (rank, vertex list)
  auto cmp = [](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::set<std::vector<VertexId>, decltype(cmp)> all(cmp);
  const unsigned full = (1u << rank) - 1u;
  for (const auto& cv : cx.chamber_vertices_)
    for (unsigned m = 0; m <= full; ++m) {
      std::vector<VertexId> f;
      for (int i = 0; i < rank; ++i)
        if (m >> i & 1u) f.push_back(cv[i]);
      all.insert(std::move(f));
    }
  for (const auto& f : all) {
    cx.face_index_.emplace(f, static_cast<FaceId>(cx.face_vertices_.size()));
    cx.face_vertices_.push_back(f);
  }
  const int nf = cx.num_faces();
  const int nc = cx.num_chambers();
  cx.face_chamber_.assign(nf, -1);
  cx.residue_.assign(nf, {});
  cx.residue_bits_.assign(nf, Bits(nc));
  cx.sub_.assign(nc, std::vector<FaceId>(full + 1));
  for (int c = 0; c < nc; ++c) {
    const auto& cv = cx.chamber_vertices_[c];
    for (unsigned m = 0; m <= full; ++m) {
      std::vector<VertexId> f;
      for (int i = 0; i < rank; ++i)
        if (m >> i & 1u) f.push_back(cv[i]);
      FaceId id = cx.face_index_.at(f);
      cx.sub_[c][m] = id;
      cx.residue_[id].push_back(c);
      cx.residue_bits_[id].set(c);
    }
    cx.chamber_face_.push_back(cx.sub_[c][full]);
    cx.face_chamber_[cx.sub_[c][full]] = c;
  }

  // names
  cx.chamber_name_.resize(nc);
  for (int c = 0; c < nc; ++c) {
    std::string name = (c < static_cast<int>(in.chamber_names.size())) ? in.chamber_names[c] : std::string();
    if (name.empty()) name = cx.face_name(cx.chamber_face_[c]);
    if (!cx.chamber_index_.emplace(name, c).second) fail(ErrorKind::ParseError, "duplicate chamber name '" + name + "'");
    cx.chamber_name_[c] = name;
  }

  // gallery graph: chambers sharing a facet
  cx.adjacent_.assign(nc, {});
  for (FaceId f = 0; f < nf; ++f) {
    if (cx.face_rank(f) != rank - 1) continue;
    const auto& res = cx.residue_[f];
    for (ChamberId a : res)
      for (ChamberId b : res)
        if (a != b) cx.adjacent_[a].push_back(b);
  }
  for (auto& adj : cx.adjacent_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  // all-pairs BFS
  cx.dist_.assign(static_cast<std::size_t>(nc) * nc, -1);
  std::vector<ChamberId> queue(nc);
  for (ChamberId s = 0; s < nc; ++s) {
    int* row = &cx.dist_[static_cast<std::size_t>(s) * nc];
    std::size_t head = 0, tail = 0;
    row[s] = 0;
    queue[tail++] = s;
    while (head < tail) {
      ChamberId u = queue[head++];
      for (ChamberId v : cx.adjacent_[u])
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue[tail++] = v;
        }
    }
    if (tail != static_cast<std::size_t>(nc)) cx.connected_ = false;
  }
  return cx;
}

// ---- text format -----------------------------------------------------------

/// Reads `vertex <name> [<type>]` and `chamber <v> <v> ... [= <name>]` lines.
inline ComplexInput parse_complex_input(std::istream& in) {
  ComplexInput ci;
  std::unordered_map<std::string, int> index;
  std::vector<std::string> types;
  int typed = 0, untyped = 0;
  std::string line;
  int lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] == "vertex") {
      if (t.size() < 2 || t.size() > 3) fail(ErrorKind::ParseError, where() + "expected 'vertex <name> [<type>]'");
      if (!index.emplace(t[1], static_cast<int>(ci.vertex_names.size())).second)
        fail(ErrorKind::ParseError, where() + "duplicate vertex '" + t[1] + "'");
      ci.vertex_names.push_back(t[1]);
      types.push_back(t.size() == 3 ? t[2] : std::string());
      (t.size() == 3 ? typed : untyped)++;
    } else if (t[0] == "chamber") {
      std::vector<VertexId> vs;
      std::string name;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] == "=") {
          if (i + 2 != t.size()) fail(ErrorKind::ParseError, where() + "expected a single name after '='");
          name = t[i + 1];
          break;
        }
        auto it = index.find(t[i]);
        if (it == index.end()) fail(ErrorKind::ParseError, where() + "undeclared vertex '" + t[i] + "'");
        vs.push_back(it->second);
      }
      if (vs.empty()) fail(ErrorKind::ParseError, where() + "chamber without vertices");
      ci.chambers.push_back(std::move(vs));
      ci.chamber_names.push_back(name);
    } else {
      fail(ErrorKind::ParseError, where() + "unknown declaration '" + t[0] + "'");
    }
  }
  if (typed > 0 && untyped > 0) fail(ErrorKind::BadLabelling, "some vertices have types and some do not");
  if (typed > 0) ci.vertex_types = types;
  return ci;
}

inline Complex parse_complex(std::istream& in) { return build_complex(parse_complex_input(in)); }

inline void write_complex(std::ostream& out, const Complex& cx) {
  for (VertexId v = 0; v < cx.num_vertices(); ++v) {
    out << "vertex " << cx.vertex_name(v);
    if (cx.labelled()) out << ' ' << cx.labels()[cx.vertex_type(v)];
    out << '\n';
  }
  for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
    out << "chamber";
    for (VertexId v : cx.chamber_vertices(c)) out << ' ' << cx.vertex_name(v);
    if (cx.chamber_name(c) != cx.face_name(cx.chamber_face(c))) out << " = " << cx.chamber_name(c);
    out << '\n';
  }
}

// ---- gallery metric ----------------------------------------------------------

inline int gallery_distance(const Complex& cx, ChamberId a, ChamberId b) {
  int d = cx.dist(a, b);
  if (d < 0) fail(ErrorKind::Disconnected, cx.chamber_name(a) + " and " + cx.chamber_name(b) + " are in different components");
  return d;
}

/// One shortest gallery from a to b (lexicographically first by chamber id).
inline std::vector<ChamberId> geodesic(const Complex& cx, ChamberId a, ChamberId b) {
  int d = gallery_distance(cx, a, b);
  std::vector<ChamberId> path{a};
  ChamberId cur = a;
  for (int step = 0; step < d; ++step) {
    for (ChamberId n : cx.adjacent(cur))
      if (cx.dist(n, b) == cx.dist(cur, b) - 1) {
        cur = n;
        break;
      }
    path.push_back(cur);
  }
  return path;
}

struct GeodesicEnumeration {
  std::vector<std::vector<ChamberId>> galleries;
  bool capped = false;
};

inline constexpr std::size_t kGeodesicCap = 1000000;

/// All shortest galleries from a to b, stopping after `cap`.
inline GeodesicEnumeration enumerate_geodesics(const Complex& cx, ChamberId a, ChamberId b,
                                               std::size_t cap = kGeodesicCap) {
  GeodesicEnumeration out;
  gallery_distance(cx, a, b);
  std::vector<ChamberId> path{a};
  auto rec = [&](auto&& self, ChamberId cur) -> void {
    if (out.capped) return;
    if (cur == b) {
      if (out.galleries.size() >= cap) {
        out.capped = true;
        return;
      }
      out.galleries.push_back(path);
      return;
    }
    for (ChamberId n : cx.adjacent(cur))
      if (cx.dist(n, b) == cx.dist(cur, b) - 1) {
        path.push_back(n);
        self(self, n);
        path.pop_back();
      }
  };
  rec(rec, a);
  return out;
}

struct ThinResult {
  bool thin = true;
  std::optional<FaceId> witness;
};

inline ThinResult is_thin(const Complex& cx) {
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    if (cx.face_rank(f) == cx.rank() - 1 && cx.residue(f).size() != 2) return {false, f};
  return {};
}

inline const std::vector<ChamberId>& residue(const Complex& cx, FaceId f) {
  if (f < 0 || f >= cx.num_faces()) fail(ErrorKind::NotAFace, "face id out of range");
  return cx.residue(f);
}

struct GateResult {
  Report report;
  bool holds = true;
  /// gate[f * chambers + c], -1 where no gate exists.
  std::vector<ChamberId> gate;
  ChamberId at(const Complex& cx, FaceId f, ChamberId c) const {
    return gate[static_cast<std::size_t>(f) * cx.num_chambers() + c];
  }
};

/// For every (F, C): a unique nearest chamber D >= F with d(C,E) = d(C,D) + d(D,E)
/// for all E >= F.
inline GateResult check_gate_property(const Complex& cx) {
  if (!cx.connected()) fail(ErrorKind::Disconnected, "gate property needs a gallery-connected complex");
  GateResult out;
  const int nc = cx.num_chambers();
  out.gate.assign(static_cast<std::size_t>(cx.num_faces()) * nc, -1);
  out.report.declare("GATE.unique");
  out.report.declare("GATE.additive");
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    const auto& res = cx.residue(f);
    for (ChamberId c = 0; c < nc; ++c) {
      int best = -1;
      std::vector<ChamberId> nearest;
      for (ChamberId d : res) {
        int dd = cx.dist(c, d);
        if (best < 0 || dd < best) {
          best = dd;
          nearest.assign(1, d);
        } else if (dd == best) {
          nearest.push_back(d);
        }
      }
      if (nearest.size() != 1) {
        out.holds = false;
        out.report.fail("GATE.unique", "F=" + cx.face_name(f) + " C=" + cx.chamber_name(c) + " nearest=" +
                                           join_map(nearest, "|", [&](ChamberId x) { return cx.chamber_name(x); }) +
                                           " d=" + std::to_string(best));
        continue;
      }
      ChamberId d = nearest.front();
      bool ok = true;
      for (ChamberId e : res)
        if (cx.dist(c, e) != cx.dist(c, d) + cx.dist(d, e)) {
          out.holds = false;
          ok = false;
          out.report.fail("GATE.additive", "F=" + cx.face_name(f) + " C=" + cx.chamber_name(c) + " D=" + cx.chamber_name(d) +
                                               " E=" + cx.chamber_name(e));
          break;
        }
      if (ok) out.gate[static_cast<std::size_t>(f) * nc + c] = d;
    }
  }
  return out;
}

/// Chambers on some shortest gallery from a to b.
inline Bits geodesic_interval(const Complex& cx, ChamberId a, ChamberId b) {
  Bits out(cx.num_chambers());
  int d = gallery_distance(cx, a, b);
  for (ChamberId e = 0; e < cx.num_chambers(); ++e)
    if (cx.dist(a, e) + cx.dist(e, b) == d) out.set(e);
  return out;
}

/// Every geodesic between chambers of a residue stays in the residue.
inline Report check_residue_convexity(const Complex& cx) {
  Report r;
  r.declare("CONVEX");
  for (FaceId f = 1; f < cx.num_faces(); ++f) {
    const auto& res = cx.residue(f);
    const Bits& rb = cx.residue_bits(f);
    for (std::size_t i = 0; i < res.size(); ++i)
      for (std::size_t j = i + 1; j < res.size(); ++j) {
        Bits iv = geodesic_interval(cx, res[i], res[j]);
        if (!iv.is_subset_of(rb)) {
          auto e = (iv - rb).find_first();
          r.fail("CONVEX", "F=" + cx.face_name(f) + " C=" + cx.chamber_name(res[i]) + " D=" + cx.chamber_name(res[j]) +
                               " via=" + cx.chamber_name(static_cast<ChamberId>(e)));
        }
      }
  }
  return r;
}

}  // namespace shellax
