#pragma once

#include "shellax/complex.hpp"
#include "shellax/linext.hpp"
#include "shellax/poset.hpp"
#include "shellax/shelling.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace shellax {

/// F x C -> chamber index (a face/element id by chamber id table).
struct ProjectionTable {
  int faces = 0;
  int chambers = 0;
  std::vector<int> at;

  ProjectionTable() = default;
  ProjectionTable(int f, int c) : faces(f), chambers(c), at(static_cast<std::size_t>(f) * c, -1) {}
  int operator()(int f, int c) const { return at[static_cast<std::size_t>(f) * chambers + c]; }
  int& operator()(int f, int c) { return at[static_cast<std::size_t>(f) * chambers + c]; }
  bool operator==(const ProjectionTable& o) const { return faces == o.faces && chambers == o.chambers && at == o.at; }
  bool operator!=(const ProjectionTable& o) const { return !(*this == o); }
};

/// (C, D) -> face R_C(D).
struct RestrictionFamily {
  int chambers = 0;
  std::vector<FaceId> at;

  RestrictionFamily() = default;
  explicit RestrictionFamily(int c) : chambers(c), at(static_cast<std::size_t>(c) * c, -1) {}
  FaceId operator()(int c, int d) const { return at[static_cast<std::size_t>(c) * chambers + d]; }
  FaceId& operator()(int c, int d) { return at[static_cast<std::size_t>(c) * chambers + d]; }
  bool operator==(const RestrictionFamily& o) const { return chambers == o.chambers && at == o.at; }
  bool operator!=(const RestrictionFamily& o) const { return !(*this == o); }
};

/// One partial order per chamber C; le[C].rows[E] = {D : E <=_C D}.
struct OrderFamily {
  std::vector<BitMatrix> le;
  bool operator==(const OrderFamily& o) const { return le == o.le; }
  bool operator!=(const OrderFamily& o) const { return le != o.le; }
};

using OppositionMap = std::vector<ChamberId>;

// ---- projection axioms ---------------------------------------------------------

inline Report check_P(const FacePoset& p, const ProjectionTable& proj) {
  Report r;
  const int n = p.size();
  const int nc = p.num_chambers();
  for (const char* id : {"P1.i", "P1.ii", "P1.iii", "P2", "P2.empty", "P2.chamber", "P3"}) r.declare(id);
  if (proj.faces != n || proj.chambers != nc) {
    r.fail("P1.i", "projection table has the wrong shape");
    return r;
  }
  auto cname = [&](int c) { return p.chamber_names[c]; };
  std::vector<Bits> down(nc, Bits(n));
  for (int x = 0; x < n; ++x)
    for (int c = 0; c < nc; ++c)
      if (p.residue[x].test(c)) down[c].set(x);

  for (int f = 0; f < n; ++f)
    for (int c = 0; c < nc; ++c) {
      int d = proj(f, c);
      if (d < 0 || d >= nc) {
        r.fail("P1.i", "F=" + p.names[f] + " C=" + cname(c) + " undefined");
        continue;
      }
      if (!p.residue[f].test(d)) r.fail("P1.i", "F=" + p.names[f] + " C=" + cname(c) + " FC=" + cname(d));
      if (p.residue[f].test(c) && d != c) r.fail("P1.ii", "F=" + p.names[f] + " C=" + cname(c) + " FC=" + cname(d));
      if (!p.residue[f].test(d)) continue;
      Bits between = p.up[f] & down[d];
      for (auto g = between.find_first(); g != Bits::npos; g = between.find_next(g))
        if (proj(static_cast<int>(g), c) != d) {
          r.fail("P1.iii", "F=" + p.names[f] + " G=" + p.names[g] + " C=" + cname(c) + " FC=" + cname(d) +
                               " GC=" + cname(proj(static_cast<int>(g), c)));
          break;
        }
    }

  for (int f = 0; f < n; ++f) {
    const char* id = f == p.bottom ? "P2.empty" : (p.chamber_of[f] >= 0 ? "P2.chamber" : "P2");
    for (auto d = p.residue[f].find_first(); d != Bits::npos; d = p.residue[f].find_next(d)) {
      std::vector<int> gs;
      for (int g : p.facets[d])
        if (p.leq(f, g)) gs.push_back(g);
      for (int c = 0; c < nc; ++c) {
        bool all = true;
        for (int g : gs)
          if (proj(g, c) != static_cast<int>(d)) {
            all = false;
            break;
          }
        if (all && proj(f, c) != static_cast<int>(d))
          r.fail(id, "F=" + p.names[f] + " C=" + cname(c) + " D=" + cname(static_cast<int>(d)) + " FC=" + cname(proj(f, c)));
      }
    }
  }

  // P3: weak C galleries ending at D = FC all project to D
  for (int c = 0; c < nc; ++c) {
    BitMatrix weak(nc);
    for (int f = 0; f < n; ++f) {
      int x = proj(f, c);
      if (x < 0) continue;
      weak.rows[x] |= p.residue[f];
    }
    BitMatrix reach = reflexive_transitive_closure(std::move(weak)).transposed();
    for (int f = 0; f < n; ++f) {
      int d = proj(f, c);
      if (d < 0) continue;
      const Bits& from = reach.rows[d];
      for (auto c1 = from.find_first(); c1 != Bits::npos; c1 = from.find_next(c1))
        if (proj(f, static_cast<int>(c1)) != d) {
          r.fail("P3", "F=" + p.names[f] + " C=" + cname(c) + " C1=" + cname(static_cast<int>(c1)) + " FC=" + cname(d) +
                           " FC1=" + cname(proj(f, static_cast<int>(c1))));
          break;
        }
    }
  }
  return r;
}

inline Report check_P(const Complex& cx, const ProjectionTable& proj) { return check_P(face_poset(cx), proj); }

// ---- restriction axioms ----------------------------------------------------------

inline Report check_R(const Complex& cx, const RestrictionFamily& rf) {
  Report r;
  for (const char* id : {"R1", "R2", "R3"}) r.declare(id);
  const int nc = cx.num_chambers();
  const int nf = cx.num_faces();
  bool r1_ok = true;
  for (ChamberId c = 0; c < nc; ++c) {
    if (rf(c, c) != Complex::empty_face()) {
      r.fail("R1", "C=" + cx.chamber_name(c) + " R_C(C)=" + cx.face_name(rf(c, c)));
      r1_ok = false;
    }
    for (ChamberId d = 0; d < nc; ++d) {
      FaceId f = rf(c, d);
      if (f < 0 || f >= nf || !cx.contains(d, f)) {
        r.fail("R1", "C=" + cx.chamber_name(c) + " D=" + cx.chamber_name(d) + " R_C(D) not a face of D");
        r1_ok = false;
      }
    }
  }
  if (!r1_ok) return r;

  std::vector<int> hits(nf);
  const unsigned full = cx.full_mask();
  for (ChamberId c = 0; c < nc; ++c) {
    std::fill(hits.begin(), hits.end(), 0);
    for (ChamberId d = 0; d < nc; ++d) {
      unsigned m0 = *cx.local_mask(d, rf(c, d));
      for (unsigned m = m0;; m = (m + 1) | m0) {
        ++hits[cx.sub(d, m)];
        if (m == full) break;
      }
    }
    for (FaceId f = 0; f < nf; ++f)
      if (hits[f] != 1) {
        r.fail("R2", "C=" + cx.chamber_name(c) + " F=" + cx.face_name(f) + " in " + std::to_string(hits[f]) + " intervals");
        break;
      }
  }

  for (ChamberId c = 0; c < nc; ++c) {
    BitMatrix gen(nc);
    for (ChamberId e = 0; e < nc; ++e) gen.rows[e] = cx.residue_bits(rf(c, e));
    BitMatrix reach = reflexive_transitive_closure(std::move(gen));
    bool bad = false;
    for (ChamberId c1 = 0; c1 < nc && !bad; ++c1)
      for (auto d = reach.rows[c1].find_first(); d != Bits::npos; d = reach.rows[c1].find_next(d)) {
        FaceId a = rf(c1, static_cast<int>(d));
        FaceId b = rf(c, static_cast<int>(d));
        if (!cx.face_leq(a, b)) {
          r.fail("R3", "C=" + cx.chamber_name(c) + " C1=" + cx.chamber_name(c1) + " D=" + cx.chamber_name(static_cast<int>(d)) +
                           " R_C1(D)=" + cx.face_name(a) + " R_C(D)=" + cx.face_name(b));
          bad = true;
          break;
        }
      }
  }
  return r;
}

// ---- shelling axioms ---------------------------------------------------------------

enum class S2Mode { Exhaustive, Sampled };

struct SOptions {
  S2Mode mode = S2Mode::Exhaustive;
  std::size_t cap = 10000;
  std::uint64_t seed = 1;
};

/// Throws NotAPartialOrder if some <=_C is not reflexive, antisymmetric and transitive.
inline void require_partial_orders(const Complex& cx, const OrderFamily& s) {
  const int nc = cx.num_chambers();
  if (static_cast<int>(s.le.size()) != nc) fail(ErrorKind::Precondition, "order family needs one order per chamber");
  for (ChamberId c = 0; c < nc; ++c) {
    const BitMatrix& le = s.le[c];
    for (ChamberId e = 0; e < nc; ++e)
      if (!le.test(e, e)) fail(ErrorKind::NotAPartialOrder, "C=" + cx.chamber_name(c) + " not reflexive at " + cx.chamber_name(e));
    if (auto v = antisymmetry_violation(le))
      fail(ErrorKind::NotAPartialOrder, "C=" + cx.chamber_name(c) + " cycle " + cx.chamber_name(static_cast<int>(v->first)) + " < " +
                                            cx.chamber_name(static_cast<int>(v->second)) + " < " + cx.chamber_name(static_cast<int>(v->first)));
    if (reflexive_transitive_closure(le) != le) fail(ErrorKind::NotAPartialOrder, "C=" + cx.chamber_name(c) + " not transitive");
  }
}

inline Report check_S(const Complex& cx, const OrderFamily& s, const SOptions& opt = {}) {
  require_partial_orders(cx, s);
  Report r;
  for (const char* id : {"S1", "S1.empty", "S2'", "S2", "S3"}) r.declare(id);
  const int nc = cx.num_chambers();
  std::vector<BitMatrix> down(nc);
  for (ChamberId c = 0; c < nc; ++c) down[c] = s.le[c].transposed();

  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    const Bits& res = cx.residue_bits(f);
    for (ChamberId c = 0; c < nc; ++c) {
      std::vector<ChamberId> minimal;
      for (auto m = res.find_first(); m != Bits::npos; m = res.find_next(m))
        if ((down[c].rows[m] & res).count() == 1) minimal.push_back(static_cast<ChamberId>(m));
      const char* id = f == Complex::empty_face() ? "S1.empty" : "S1";
      if (minimal.size() != 1)
        r.fail(id, "F=" + cx.face_name(f) + " C=" + cx.chamber_name(c) + " minimal=" +
                       join_map(minimal, "|", [&](ChamberId x) { return cx.chamber_name(x); }));
      else if (f == Complex::empty_face() && minimal.front() != c)
        r.fail(id, "C=" + cx.chamber_name(c) + " minimum=" + cx.chamber_name(minimal.front()));
    }
  }

  std::size_t exhaustive = 0, sampled = 0, chain = 0;
  const ShellingChecker shells(cx);
  for (ChamberId c = 0; c < nc; ++c) {
    const BitMatrix& le = s.le[c];
    auto first = first_linear_extension(le);
    if (auto why = shells.violation(first)) r.fail("S2'", "C=" + cx.chamber_name(c) + " " + *why);
    LinearExtensionSampler sampler(le);
    bool enumerate = opt.mode == S2Mode::Exhaustive && (!sampler.exact() || sampler.total() <= opt.cap);
    if (enumerate) {
      std::optional<std::string> bad;
      std::size_t n = for_each_linear_extension(le, opt.cap + 1, [&](const std::vector<int>& e) {
        if (bad) return;
        if (auto why = shells.violation(e))
          bad = "C=" + cx.chamber_name(c) + " order=" + join_map(e, ",", [&](int x) { return cx.chamber_name(x); }) + " " + *why;
      });
      if (bad) r.fail("S2", *bad);
      if (n <= opt.cap || bad) {
        ++exhaustive;
        continue;
      }
    }
    ++sampled;
    if (!sampler.exact()) ++chain;
    std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(c));
    for (std::size_t i = 0; i < opt.cap; ++i) {
      auto e = sampler.sample(rng);
      if (auto why = shells.violation(e)) {
        r.fail("S2", "C=" + cx.chamber_name(c) + " sampled order=" + join_map(e, ",", [&](int x) { return cx.chamber_name(x); }) + " " + *why);
        break;
      }
    }
  }
  r.info("S2.mode", sampled == 0 ? "exhaustive" : (exhaustive == 0 ? "sampled" : "mixed"));
  r.info("S2.orders", std::to_string(exhaustive) + " exhaustive, " + std::to_string(sampled) + " sampled");
  if (sampled > 0)
    r.info("S2.sampler", chain == 0 ? "exact" : (chain == sampled ? "markov-chain" : "exact+markov-chain"));

  for (ChamberId c = 0; c < nc; ++c)
    for (ChamberId d = 0; d < nc; ++d) {
      const Bits& above = s.le[c].rows[d];
      bool bad = false;
      for (auto d1 = above.find_first(); d1 != Bits::npos && !bad; d1 = above.find_next(d1))
        if (!s.le[c].rows[d1].is_subset_of(s.le[d].rows[d1])) {
          Bits miss = s.le[c].rows[d1] - s.le[d].rows[d1];
          r.fail("S3", "C=" + cx.chamber_name(c) + " D=" + cx.chamber_name(d) + " D1=" + cx.chamber_name(static_cast<int>(d1)) +
                           " D2=" + cx.chamber_name(static_cast<int>(miss.find_first())));
          bad = true;
        }
    }
  return r;
}

// ---- conversions -------------------------------------------------------------------

/// R_C(D) spanned by the vertices v of D with (D \ v) C != D.
inline RestrictionFamily p_to_r(const Complex& cx, const ProjectionTable& proj) {
  const int nc = cx.num_chambers();
  RestrictionFamily rf(nc);
  for (ChamberId c = 0; c < nc; ++c)
    for (ChamberId d = 0; d < nc; ++d) {
      unsigned m = 0;
      for (int i = 0; i < cx.rank(); ++i)
        if (proj(cx.facet(d, i), c) != d) m |= 1u << i;
      rf(c, d) = cx.sub(d, m);
    }
  return rf;
}

/// <=_C is the transitive closure of E -> D whenever R_C(E) <= D.
inline OrderFamily r_to_s(const Complex& cx, const RestrictionFamily& rf) {
  const int nc = cx.num_chambers();
  OrderFamily s;
  for (ChamberId c = 0; c < nc; ++c) {
    BitMatrix gen(nc);
    for (ChamberId e = 0; e < nc; ++e) {
      gen.rows[e] = cx.residue_bits(rf(c, e));
      gen.rows[e].reset(e);
    }
    BitMatrix le = reflexive_transitive_closure(gen);
    if (antisymmetry_violation(le)) {
      auto cyc = shortest_cycle(gen);
      fail(ErrorKind::NotAPartialOrder,
           "C=" + cx.chamber_name(c) + " cycle " +
               join_map(cyc, " < ", [&](std::size_t x) { return cx.chamber_name(static_cast<ChamberId>(x)); }) + " < " +
               cx.chamber_name(static_cast<ChamberId>(cyc.front())));
    }
    s.le.push_back(std::move(le));
  }
  return s;
}

/// FC is the <=_C-minimum of the chambers containing F.
inline ProjectionTable s_to_p(const Complex& cx, const OrderFamily& s) {
  const int nc = cx.num_chambers();
  ProjectionTable proj(cx.num_faces(), nc);
  std::vector<BitMatrix> down(nc);
  for (ChamberId c = 0; c < nc; ++c) down[c] = s.le[c].transposed();
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    const Bits& res = cx.residue_bits(f);
    for (ChamberId c = 0; c < nc; ++c) {
      int found = -1;
      int count = 0;
      for (auto m = res.find_first(); m != Bits::npos; m = res.find_next(m))
        if ((down[c].rows[m] & res).count() == 1) {
          found = static_cast<int>(m);
          ++count;
        }
      if (count != 1)
        fail(ErrorKind::NoUniqueMinimum, "F=" + cx.face_name(f) + " C=" + cx.chamber_name(c) + " has " + std::to_string(count) + " minimal chambers");
      proj(f, c) = found;
    }
  }
  return proj;
}

struct MetricStructure {
  ProjectionTable P;
  RestrictionFamily R;
  OrderFamily S;
};

/// Gate projections, Des restrictions and geodesic-interval orders, each computed
/// from the gallery metric on its own, then checked against one another.
inline MetricStructure metric_structure(const Complex& cx) {
  GateResult gate = check_gate_property(cx);
  if (!gate.holds) {
    const auto& checks = gate.report.checks();
    std::string w;
    for (const auto& c : checks)
      if (!c.pass()) {
        w = c.id + " " + c.witnesses.front();
        break;
      }
    fail(ErrorKind::GatePropertyFails, w);
  }
  const int nc = cx.num_chambers();
  MetricStructure m;
  m.P = ProjectionTable(cx.num_faces(), nc);
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    for (ChamberId c = 0; c < nc; ++c) m.P(f, c) = gate.at(cx, f, c);

  m.R = RestrictionFamily(nc);
  for (ChamberId c = 0; c < nc; ++c)
    for (ChamberId d = 0; d < nc; ++d) {
      unsigned mask = 0;
      for (int i = 0; i < cx.rank(); ++i)
        for (ChamberId e : cx.residue(cx.facet(d, i)))
          if (e != d && cx.dist(c, e) == cx.dist(c, d) - 1) {
            mask |= 1u << i;
            break;
          }
      m.R(c, d) = cx.sub(d, mask);
    }

  for (ChamberId c = 0; c < nc; ++c) {
    BitMatrix le(nc);
    for (ChamberId d = 0; d < nc; ++d)
      for (ChamberId e = 0; e < nc; ++e)
        if (cx.dist(c, d) + cx.dist(d, e) == cx.dist(c, e)) le.set(d, e);
    m.S.le.push_back(std::move(le));
  }

  if (p_to_r(cx, m.P) != m.R) fail(ErrorKind::LemmaViolation, "restrictions from gates differ from descent faces");
  if (r_to_s(cx, m.R) != m.S) fail(ErrorKind::LemmaViolation, "orders from descent faces differ from geodesic intervals");
  if (s_to_p(cx, m.S) != m.P) fail(ErrorKind::LemmaViolation, "minima of geodesic orders differ from gates");
  return m;
}

/// For each C the unique D with R_C(D) = D.
inline OppositionMap find_opposition(const Complex& cx, const RestrictionFamily& rf) {
  const int nc = cx.num_chambers();
  OppositionMap opp(nc, -1);
  for (ChamberId c = 0; c < nc; ++c) {
    std::vector<ChamberId> found;
    for (ChamberId d = 0; d < nc; ++d)
      if (rf(c, d) == cx.chamber_face(d)) found.push_back(d);
    if (found.empty()) fail(ErrorKind::NoOpposite, "C=" + cx.chamber_name(c));
    if (found.size() > 1)
      fail(ErrorKind::MultipleOpposites,
           "C=" + cx.chamber_name(c) + " candidates " + join_map(found, "|", [&](ChamberId x) { return cx.chamber_name(x); }));
    opp[c] = found.front();
  }
  return opp;
}

inline Report check_opposite(const Complex& cx, const ProjectionTable& proj, const RestrictionFamily& rf, const OrderFamily& s,
                             const OppositionMap& opp) {
  Report r;
  for (const char* id : {"OPP.involution", "P4", "R4", "S4", "OPP.charP", "OPP.charR", "OPP.charS"}) r.declare(id);
  const int nc = cx.num_chambers();
  for (ChamberId c = 0; c < nc; ++c)
    if (opp[opp[c]] != c) r.fail("OPP.involution", "C=" + cx.chamber_name(c) + " opp=" + cx.chamber_name(opp[c]) + " opp(opp)=" + cx.chamber_name(opp[opp[c]]));

  for (FaceId g = 0; g < cx.num_faces(); ++g) {
    if (cx.face_rank(g) != cx.rank() - 1) continue;
    for (ChamberId c = 0; c < nc; ++c)
      if (proj(g, c) == proj(g, opp[c])) r.fail("P4", "G=" + cx.face_name(g) + " C=" + cx.chamber_name(c) + " GC=" + cx.chamber_name(proj(g, c)));
  }

  const unsigned all_types = cx.labelled() ? (1u << cx.num_labels()) - 1u : 0u;
  for (ChamberId c = 0; c < nc; ++c)
    for (ChamberId d = 0; d < nc; ++d) {
      FaceId a = rf(c, d), b = rf(opp[c], d);
      bool ok;
      if (cx.labelled()) {
        ok = cx.type_mask(a) == (all_types & ~cx.type_mask(b));
      } else {
        unsigned ma = *cx.local_mask(d, a), mb = *cx.local_mask(d, b);
        ok = (ma & mb) == 0 && (ma | mb) == cx.full_mask();
      }
      if (!ok)
        r.fail("R4", "C=" + cx.chamber_name(c) + " D=" + cx.chamber_name(d) + " R_C(D)=" + cx.face_name(a) + " R_opp(D)=" + cx.face_name(b));
    }

  for (ChamberId c = 0; c < nc; ++c)
    if (s.le[opp[c]] != s.le[c].transposed()) r.fail("S4", "C=" + cx.chamber_name(c) + " opp=" + cx.chamber_name(opp[c]));

  for (ChamberId c = 0; c < nc; ++c) {
    // P: opp(C) is the unique chamber never reached as FC from a proper face F
    std::vector<ChamberId> pc;
    for (ChamberId d = 0; d < nc; ++d) {
      bool reached = false;
      for (unsigned m = 0; m < cx.full_mask() && !reached; ++m)
        if (proj(cx.sub(d, m), c) == d) reached = m != 0 || d == c;
      if (!reached) pc.push_back(d);
    }
    if (pc.size() != 1 || pc.front() != opp[c]) r.fail("OPP.charP", "C=" + cx.chamber_name(c));
    std::vector<ChamberId> rc, sc;
    for (ChamberId d = 0; d < nc; ++d) {
      if (rf(c, d) == cx.chamber_face(d)) rc.push_back(d);
      if (s.le[c].rows[d].count() == 1) sc.push_back(d);
    }
    if (rc.size() != 1 || rc.front() != opp[c]) r.fail("OPP.charR", "C=" + cx.chamber_name(c));
    if (sc.size() != 1 || sc.front() != opp[c]) r.fail("OPP.charS", "C=" + cx.chamber_name(c));
  }

  auto verdict = [&](const char* id) { return r.passed(id) ? "PASS" : "FAIL"; };
  r.info("OPP.pattern", std::string("P4=") + verdict("P4") + " R4=" + verdict("R4") + " S4=" + verdict("S4"));
  if (is_thin(cx).thin) {
    bool same = r.passed("P4") == r.passed("R4") && r.passed("R4") == r.passed("S4");
    if (same)
      r.declare("OPP.equivalence");
    else
      r.fail_internal("OPP.equivalence", "P4/R4/S4 disagree on a thin complex");
  }
  return r;
}

/// Round trips of the three conversions.
inline Report check_round_trips(const Complex& cx, const ProjectionTable& proj, const RestrictionFamily& rf, const OrderFamily& s) {
  Report r;
  auto attempt = [&](const char* id, auto&& fn) {
    try {
      if (fn())
        r.declare(id);
      else
        r.fail(id, "round trip changed the structure");
    } catch (const Error& e) {
      r.fail(id, e.what());
    }
  };
  attempt("ROUNDTRIP.P", [&] { return s_to_p(cx, r_to_s(cx, p_to_r(cx, proj))) == proj; });
  attempt("ROUNDTRIP.R", [&] { return p_to_r(cx, s_to_p(cx, r_to_s(cx, rf))) == rf; });
  attempt("ROUNDTRIP.S", [&] { return r_to_s(cx, p_to_r(cx, s_to_p(cx, s))) == s; });
  return r;
}

// ---- text format -------------------------------------------------------------------------

struct StructureInput {
  std::optional<ProjectionTable> P;
  std::optional<RestrictionFamily> R;
  std::optional<OrderFamily> S;
};

/// Reads `proj`, `restr` and `order` lines. Orders are closed reflexively and
/// transitively; tables must be total.
inline StructureInput parse_structure(std::istream& in, const Complex& cx) {
  StructureInput out;
  const int nc = cx.num_chambers();
  std::vector<BitMatrix> gen;
  std::string line;
  int lineno = 0;
  auto where = [&] { return "line " + std::to_string(lineno) + ": "; };
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] == "proj") {
      if (t.size() != 5 || t[3] != "->") fail(ErrorKind::ParseError, where() + "expected 'proj <face> <chamber> -> <chamber>'");
      if (!out.P) out.P = ProjectionTable(cx.num_faces(), nc);
      (*out.P)(cx.parse_face(t[1]), cx.parse_chamber(t[2])) = cx.parse_chamber(t[4]);
    } else if (t[0] == "restr") {
      if (t.size() != 5 || t[3] != "->") fail(ErrorKind::ParseError, where() + "expected 'restr <C> <D> -> <face>'");
      if (!out.R) out.R = RestrictionFamily(nc);
      (*out.R)(cx.parse_chamber(t[1]), cx.parse_chamber(t[2])) = cx.parse_face(t[4]);
    } else if (t[0] == "order") {
      if (t.size() != 5 || t[1].empty() || t[1].back() != ':' || t[3] != "<")
        fail(ErrorKind::ParseError, where() + "expected 'order <C>: <E> < <D>'");
      if (gen.empty()) gen.assign(nc, BitMatrix(nc));
      ChamberId c = cx.parse_chamber(t[1].substr(0, t[1].size() - 1));
      gen[c].set(cx.parse_chamber(t[2]), cx.parse_chamber(t[4]));
    } else {
      fail(ErrorKind::ParseError, where() + "unknown structure line '" + t[0] + "'");
    }
  }
  if (out.P && std::count(out.P->at.begin(), out.P->at.end(), -1) > 0) fail(ErrorKind::ParseError, "projection table is not total");
  if (out.R && std::count(out.R->at.begin(), out.R->at.end(), -1) > 0) fail(ErrorKind::ParseError, "restriction family is not total");
  if (!gen.empty()) {
    OrderFamily s;
    for (ChamberId c = 0; c < nc; ++c) {
      BitMatrix le = reflexive_transitive_closure(gen[c]);
      if (antisymmetry_violation(le)) {
        BitMatrix strict = gen[c];
        for (ChamberId x = 0; x < nc; ++x) strict.rows[x].reset(x);
        auto cyc = shortest_cycle(strict);
        if (!cyc.empty()) cyc.push_back(cyc.front());
        fail(ErrorKind::NotAPartialOrder,
             "C=" + cx.chamber_name(c) + " cycle " +
                 join_map(cyc, " < ", [&](std::size_t x) { return cx.chamber_name(static_cast<ChamberId>(x)); }));
      }
      s.le.push_back(std::move(le));
    }
    out.S = std::move(s);
  }
  return out;
}

inline void write_projection(std::ostream& out, const Complex& cx, const ProjectionTable& proj) {
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    for (ChamberId c = 0; c < cx.num_chambers(); ++c)
      out << "proj " << cx.face_name(f) << ' ' << cx.chamber_name(c) << " -> " << cx.chamber_name(proj(f, c)) << '\n';
}

inline void write_restriction(std::ostream& out, const Complex& cx, const RestrictionFamily& rf) {
  for (ChamberId c = 0; c < cx.num_chambers(); ++c)
    for (ChamberId d = 0; d < cx.num_chambers(); ++d)
      out << "restr " << cx.chamber_name(c) << ' ' << cx.chamber_name(d) << " -> " << cx.face_name(rf(c, d)) << '\n';
}

/// Writes the cover relations (Hasse diagram) of every order.
inline void write_orders(std::ostream& out, const Complex& cx, const OrderFamily& s) {
  const int nc = cx.num_chambers();
  for (ChamberId c = 0; c < nc; ++c) {
    const BitMatrix& le = s.le[c];
    for (ChamberId e = 0; e < nc; ++e)
      for (auto d = le.rows[e].find_first(); d != Bits::npos; d = le.rows[e].find_next(d)) {
        if (static_cast<int>(d) == e) continue;
        bool cover = true;
        for (auto m = le.rows[e].find_first(); m != Bits::npos && cover; m = le.rows[e].find_next(m))
          if (m != static_cast<std::size_t>(e) && m != d && le.test(m, d)) cover = false;
        if (cover) out << "order " << cx.chamber_name(c) << ": " << cx.chamber_name(e) << " < " << cx.chamber_name(static_cast<int>(d)) << '\n';
      }
  }
}

}  // namespace shellax
