#pragma once

#include "shellax/complex.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace shellax {

using ShellingOrder = std::vector<ChamberId>;

/// Per chamber D: the facets of D already covered when D is added (as a mask
/// of local vertex positions v, meaning facet D \ v) and the restriction face
/// spanned by those v.
struct ShellingCertificate {
  ShellingOrder order;
  std::vector<int> position;
  std::vector<unsigned> covered;
  std::vector<FaceId> restriction;
};

namespace detail {

inline void require_permutation(const Complex& cx, const ShellingOrder& order) {
  if (static_cast<int>(order.size()) != cx.num_chambers())
    fail(ErrorKind::Precondition, "shelling order lists " + std::to_string(order.size()) + " chambers, complex has " +
                                      std::to_string(cx.num_chambers()));
  std::vector<char> seen(cx.num_chambers(), 0);
  for (ChamberId c : order) {
    if (c < 0 || c >= cx.num_chambers() || seen[c]) fail(ErrorKind::Precondition, "shelling order is not a permutation of the chambers");
    seen[c] = 1;
  }
}

/// Verdict from the local vertex masks of the earlier chambers meeting D.
inline std::optional<unsigned> covered_from_masks(const Complex& cx, ChamberId d, int p, const std::vector<unsigned>& masks,
                                                  std::string* why) {
  const int r = cx.rank();
  if (p == 0) return 0u;
  const unsigned full = cx.full_mask();
  unsigned covered = 0;
  for (unsigned m : masks)
    if (popcount(m) == r - 1) covered |= full ^ m;
  if (r == 1) {
    // rank-1 complexes: every later point meets earlier ones in the empty face
    return 1u;
  }
  if (covered == 0) {
    if (why) *why = masks.empty() ? "D=" + cx.chamber_name(d) + " meets no earlier chamber"
                                  : "D=" + cx.chamber_name(d) + " meets earlier chambers only in lower faces";
    return std::nullopt;
  }
  for (unsigned m : masks)
    if ((covered & ~m) == 0) {
      if (why) *why = "D=" + cx.chamber_name(d) + " exposed face " + cx.face_name(cx.sub(d, m));
      return std::nullopt;
    }
  return covered;
}

/// Scans the chambers placed before position p that meet D = order[p].
/// Returns the covered-facet mask, or nullopt with `why` filled if the
/// intersection is not a nonempty union of facets.
inline std::optional<unsigned> covered_facets(const Complex& cx, const std::vector<int>& position, ChamberId d,
                                              std::vector<int>& local, std::vector<unsigned>& masks,
                                              std::string* why) {
  const int r = cx.rank();
  const auto& dv = cx.chamber_vertices(d);
  const int p = position[d];
  for (int i = 0; i < r; ++i) local[dv[i]] = i;
  masks.clear();
  for (int i = 0; i < r; ++i)
    for (ChamberId e : cx.residue(cx.sub(d, 1u << i))) {
      if (position[e] >= p) continue;
      unsigned m = 0;
      for (VertexId v : cx.chamber_vertices(e))
        if (local[v] >= 0) m |= 1u << local[v];
      masks.push_back(m);
    }
  for (int i = 0; i < r; ++i) local[dv[i]] = -1;
  return covered_from_masks(cx, d, p, masks, why);
}

}  // namespace detail

/// Null if `order` is a shelling, else a witness description.
/// Reusable shelling test for many orders of one complex: the chambers
/// meeting each chamber and their shared local vertex masks are found once.
class ShellingChecker {
 public:
  explicit ShellingChecker(const Complex& cx) : cx_(cx), meets_(cx.num_chambers()) {
    std::vector<int> local(cx.num_vertices(), -1);
    for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
      const auto& dv = cx.chamber_vertices(d);
      for (int i = 0; i < cx.rank(); ++i) local[dv[i]] = i;
      std::vector<char> seen(cx.num_chambers(), 0);
      seen[d] = 1;
      for (int i = 0; i < cx.rank(); ++i)
        for (ChamberId e : cx.residue(cx.sub(d, 1u << i))) {
          if (seen[e]) continue;
          seen[e] = 1;
          unsigned m = 0;
          for (VertexId v : cx.chamber_vertices(e))
            if (local[v] >= 0) m |= 1u << local[v];
          meets_[d].emplace_back(e, m);
        }
      for (int i = 0; i < cx.rank(); ++i) local[dv[i]] = -1;
    }
  }

  /// Null if `order` is a shelling, else a witness description.
  std::optional<std::string> violation(const ShellingOrder& order) const {
    position_.resize(cx_.num_chambers());
    for (std::size_t i = 0; i < order.size(); ++i) position_[order[i]] = static_cast<int>(i);
    std::string why;
    for (ChamberId d : order) {
      const int p = position_[d];
      masks_.clear();
      for (auto [e, m] : meets_[d])
        if (position_[e] < p) masks_.push_back(m);
      if (!detail::covered_from_masks(cx_, d, p, masks_, &why)) return why;
    }
    return std::nullopt;
  }

 private:
  const Complex& cx_;
  std::vector<std::vector<std::pair<ChamberId, unsigned>>> meets_;
  mutable std::vector<int> position_;
  mutable std::vector<unsigned> masks_;
};

inline std::optional<std::string> shelling_violation(const Complex& cx, const ShellingOrder& order) {
  return ShellingChecker(cx).violation(order);
}

inline ShellingCertificate verify_shelling(const Complex& cx, const ShellingOrder& order) {
  detail::require_permutation(cx, order);
  ShellingCertificate cert;
  cert.order = order;
  const int nc = cx.num_chambers();
  cert.position.assign(nc, 0);
  for (int i = 0; i < nc; ++i) cert.position[order[i]] = i;
  cert.covered.assign(nc, 0);
  cert.restriction.assign(nc, Complex::empty_face());
  std::vector<int> local(cx.num_vertices(), -1);
  std::vector<unsigned> masks;
  std::string why;
  for (ChamberId d : order) {
    auto cov = detail::covered_facets(cx, cert.position, d, local, masks, &why);
    if (!cov) fail(ErrorKind::NotAShelling, why);
    cert.covered[d] = *cov;
    cert.restriction[d] = cx.sub(d, *cov);
  }
  return cert;
}

/// Restriction-derived order: transitive closure of E -> D when R(E) <= D
/// (and, if refined, E adjacent to D). Rows of the result are up-sets.
inline BitMatrix restriction_to_order(const Complex& cx, const std::vector<FaceId>& restriction, bool refined) {
  const int nc = cx.num_chambers();
  int empties = 0;
  for (FaceId f : restriction)
    if (f == Complex::empty_face()) ++empties;
  if (empties != 1)
    fail(ErrorKind::Precondition, "restriction map must send exactly one chamber to the empty face, found " + std::to_string(empties));
  BitMatrix gen(nc);
  for (ChamberId e = 0; e < nc; ++e) {
    const Bits& over = cx.residue_bits(restriction[e]);
    for (auto d = over.find_first(); d != Bits::npos; d = over.find_next(d))
      if (static_cast<int>(d) != e && (!refined || cx.is_adjacent(e, static_cast<ChamberId>(d)))) gen.set(e, d);
  }
  BitMatrix le = reflexive_transitive_closure(gen);
  if (antisymmetry_violation(le)) {
    auto cyc = shortest_cycle(gen);
    fail(ErrorKind::NotAPartialOrder,
         "cycle " + join_map(cyc, " < ", [&](std::size_t c) { return cx.chamber_name(static_cast<ChamberId>(c)); }) + " < " +
             cx.chamber_name(static_cast<ChamberId>(cyc.front())));
  }
  return le;
}

struct LinkShelling {
  Complex link;
  ShellingOrder order;
  ShellingCertificate certificate;
  /// Link chamber for each star chamber, -1 outside the star.
  std::vector<ChamberId> link_chamber;
};

/// Restricts a shelling to the chambers containing F, shells the link of F with
/// the induced order and checks that its covered facets are exactly the
/// covered facets of the full shelling that contain F.
inline LinkShelling link_shelling(const Complex& cx, const ShellingOrder& order, FaceId f) {
  ShellingCertificate cert = verify_shelling(cx, order);
  if (f < 0 || f >= cx.num_faces()) fail(ErrorKind::NotAFace, "face id out of range");
  if (cx.face_rank(f) == cx.rank()) fail(ErrorKind::Precondition, "the link of a chamber has no chambers of positive rank");
  const auto& fv = cx.face_vertices(f);

  ComplexInput in;
  std::vector<int> vmap(cx.num_vertices(), -1);
  ShellingOrder star;
  for (ChamberId d : order)
    if (cx.contains(d, f)) star.push_back(d);
  for (ChamberId d : star)
    for (VertexId v : cx.chamber_vertices(d))
      if (!std::binary_search(fv.begin(), fv.end(), v) && vmap[v] < 0) vmap[v] = 0;
  for (VertexId v = 0; v < cx.num_vertices(); ++v)
    if (vmap[v] == 0) {
      vmap[v] = static_cast<int>(in.vertex_names.size());
      in.vertex_names.push_back(cx.vertex_name(v));
      if (cx.labelled()) in.vertex_types.push_back(cx.labels()[cx.vertex_type(v)]);
    }
  for (ChamberId d : star) {
    std::vector<VertexId> lv;
    for (VertexId v : cx.chamber_vertices(d))
      if (vmap[v] >= 0) lv.push_back(vmap[v]);
    in.chambers.push_back(lv);
    in.chamber_names.push_back(cx.chamber_name(d));
  }

  LinkShelling out{build_complex(in), {}, {}, std::vector<ChamberId>(cx.num_chambers(), -1)};
  for (std::size_t i = 0; i < star.size(); ++i) {
    out.link_chamber[star[i]] = static_cast<ChamberId>(i);
    out.order.push_back(static_cast<ChamberId>(i));
  }
  try {
    out.certificate = verify_shelling(out.link, out.order);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAShelling) throw;
    fail(ErrorKind::LemmaViolation, std::string("induced order does not shell the link of ") + cx.face_name(f) + ": " + e.what());
  }

  for (ChamberId d : star) {
    ChamberId ld = out.link_chamber[d];
    const auto& dv = cx.chamber_vertices(d);
    std::vector<std::string> expect, got;
    for (int i = 0; i < cx.rank(); ++i)
      if ((cert.covered[d] >> i & 1u) && !std::binary_search(fv.begin(), fv.end(), dv[i])) expect.push_back(cx.vertex_name(dv[i]));
    const auto& lv = out.link.chamber_vertices(ld);
    for (int i = 0; i < out.link.rank(); ++i)
      if (out.certificate.covered[ld] >> i & 1u) got.push_back(out.link.vertex_name(lv[i]));
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got)
      fail(ErrorKind::LemmaViolation, "link facets of " + cx.chamber_name(d) + " differ from the facets containing " + cx.face_name(f));
  }
  return out;
}

/// Reduced Euler characteristic over faces of rank <= max_rank, empty face included.
inline long long reduced_euler(const Complex& cx, int max_rank) {
  long long chi = 0;
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    int r = cx.face_rank(f);
    if (r > max_rank) continue;
    chi += (r % 2 == 1) ? 1 : -1;  // sign (-1)^(rank-1)
  }
  return chi;
}

/// Number of chambers with R(D) = D, checked against the Euler characteristic.
inline long long sphere_count(const Complex& cx, const ShellingCertificate& cert) {
  long long count = 0;
  for (ChamberId d = 0; d < cx.num_chambers(); ++d)
    if (cert.restriction[d] == cx.chamber_face(d)) ++count;
  long long chi = reduced_euler(cx, cx.rank());
  long long expect = (cx.rank() % 2 == 1) ? count : -count;
  if (chi != expect)
    fail(ErrorKind::EulerMismatch, "reduced Euler characteristic " + std::to_string(chi) + " but " + std::to_string(count) +
                                       " spheres of dimension " + std::to_string(cx.rank() - 1));
  return count;
}

/// On a thin complex: the reversed order shells, restriction types complement,
/// and the reversed covered facets are exactly the forward-uncovered ones.
inline Report reverse_shelling_check(const Complex& cx, const ShellingOrder& order) {
  ThinResult thin = is_thin(cx);
  if (!thin.thin) fail(ErrorKind::NotThin, "reversal needs a thin complex; facet " + cx.face_name(*thin.witness) + " lies in " +
                                               std::to_string(cx.residue(*thin.witness).size()) + " chambers");
  Report r;
  ShellingCertificate fwd = verify_shelling(cx, order);
  ShellingOrder rev(order.rbegin(), order.rend());
  r.declare("REV.shelling");
  r.declare("REV.complement");
  if (cx.labelled()) r.declare("REV.type");
  r.declare("REV.facets");
  r.declare("REV.involution");
  auto why = shelling_violation(cx, rev);
  if (why) {
    r.fail("REV.shelling", *why);
    return r;
  }
  ShellingCertificate bwd = verify_shelling(cx, rev);
  const unsigned full = cx.full_mask();
  const unsigned all_types = (1u << cx.num_labels()) - 1u;
  for (ChamberId d = 0; d < cx.num_chambers(); ++d) {
    FaceId complement = cx.sub(d, full ^ fwd.covered[d]);
    if (bwd.restriction[d] != complement)
      r.fail("REV.complement", "D=" + cx.chamber_name(d) + " R=" + cx.face_name(fwd.restriction[d]) +
                                   " reversed=" + cx.face_name(bwd.restriction[d]));
    if (cx.labelled() && cx.type_mask(bwd.restriction[d]) != (all_types & ~cx.type_mask(fwd.restriction[d])))
      r.fail("REV.type", "D=" + cx.chamber_name(d));
    if ((bwd.covered[d] | fwd.covered[d]) != full || (bwd.covered[d] & fwd.covered[d]) != 0)
      r.fail("REV.facets", "D=" + cx.chamber_name(d));
  }
  ShellingCertificate twice = verify_shelling(cx, ShellingOrder(rev.rbegin(), rev.rend()));
  if (twice.restriction != fwd.restriction || twice.covered != fwd.covered) r.fail("REV.involution", "double reversal changed the certificate");
  return r;
}

// ---- text formats --------------------------------------------------------------

inline ShellingOrder parse_shelling_order(std::istream& in, const Complex& cx) {
  ShellingOrder out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = tokenize_line(line);
    if (t.empty()) continue;
    if (t.size() != 1) fail(ErrorKind::ParseError, "expected one chamber per line, got '" + line + "'");
    out.push_back(cx.parse_chamber(t[0]));
  }
  return out;
}

inline void write_certificate(std::ostream& out, const Complex& cx, const ShellingCertificate& cert) {
  for (ChamberId d : cert.order) out << "R " << cx.chamber_name(d) << " -> " << cx.face_name(cert.restriction[d]) << '\n';
}

}  // namespace shellax
