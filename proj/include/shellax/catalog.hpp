#pragma once

#include "shellax/arrangement.hpp"
#include "shellax/buildings.hpp"
#include "shellax/complex.hpp"
#include "shellax/report.hpp"
#include "shellax/structures.hpp"
#include "shellax/util.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shellax {

/// A generated example: the complex (absent for non-simplicial arrangements),
/// its source data and any bundled axiom structure.
struct CatalogEntry {
  std::string name;
  std::optional<Complex> complex;
  std::optional<MetricStructure> bundled;
  std::optional<FaceEnumeration> faces;
  std::optional<Building> building;
  /// Chamber sets of known apartments (Petersen).
  std::vector<std::vector<ChamberId>> apartments;

  const Complex& cx() const {
    if (!complex) fail(ErrorKind::NotSimplicial, name + " has no simplicial complex");
    return *complex;
  }
};

/// Cycle with vertices 0..n-1 and chambers e<i> = {i, i+1}.
inline ComplexInput cycle_input(int n) {
  ComplexInput in;
  for (int i = 0; i < n; ++i) in.vertex_names.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    in.chambers.push_back({i, (i + 1) % n});
    in.chamber_names.push_back("e" + std::to_string(i));
  }
  return in;
}

/// The n-gon with the clockwise orders: from e_c, e_c < e_{c+1} < ... < e_{c-1}.
inline CatalogEntry gen_ngon(int n) {
  if (n < 3) fail(ErrorKind::BadN, "an n-gon needs n >= 3");
  CatalogEntry e;
  e.name = "ngon:" + std::to_string(n);
  e.complex = build_complex(cycle_input(n));
  const Complex& cx = *e.complex;
  OrderFamily s;
  for (int c = 0; c < n; ++c) {
    BitMatrix le(n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) le.set((c + a) % n, (c + b) % n);
    s.le.push_back(std::move(le));
  }
  MetricStructure m;
  m.S = s;
  m.P = s_to_p(cx, s);
  m.R = p_to_r(cx, m.P);
  Report own;
  own.merge(check_P(cx, m.P));
  own.merge(check_R(cx, m.R));
  own.merge(check_S(cx, m.S));
  if (!own.all_passed()) fail(ErrorKind::LemmaViolation, "clockwise structure on " + e.name + " fails its own axioms");
  e.bundled = std::move(m);
  return e;
}

/// Hexagon with vertex types alternating s, t.
inline CatalogEntry gen_hexagon() {
  ComplexInput in = cycle_input(6);
  for (int i = 0; i < 6; ++i) in.vertex_types.push_back(i % 2 == 0 ? "s" : "t");
  CatalogEntry e;
  e.name = "hexagon";
  e.complex = build_complex(in);
  return e;
}

/// Petersen graph as a 1-dimensional complex: vertices p<i><j> for 2-subsets
/// of {1..5}, chambers the disjoint pairs; apartments are its 6-cycles.
inline CatalogEntry gen_petersen() {
  ComplexInput in;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      pairs.emplace_back(i, j);
      in.vertex_names.push_back("p" + std::to_string(i) + std::to_string(j));
    }
  const int nv = static_cast<int>(pairs.size());
  auto disjoint = [&](int a, int b) {
    auto [i, j] = pairs[a];
    auto [k, l] = pairs[b];
    return i != k && i != l && j != k && j != l;
  };
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      if (disjoint(a, b)) in.chambers.push_back({a, b});
  CatalogEntry e;
  e.name = "petersen";
  e.complex = build_complex(in);
  const Complex& cx = *e.complex;

  // 6-cycles, each found once: start at its least vertex, second vertex below the last
  std::vector<int> path;
  std::vector<char> used(nv, 0);
  auto edge = [&](int a, int b) { return cx.find_face({a, b}).has_value(); };
  auto extend = [&](auto&& self) -> void {
    int last = path.back();
    if (path.size() == 6) {
      if (edge(last, path.front()) && path[1] < path[5]) {
        std::vector<ChamberId> cyc;
        for (std::size_t i = 0; i < 6; ++i) cyc.push_back(cx.face_chamber(*cx.find_face({path[i], path[(i + 1) % 6]})));
        std::sort(cyc.begin(), cyc.end());
        e.apartments.push_back(std::move(cyc));
      }
      return;
    }
    for (int v = path.front() + 1; v < nv; ++v)
      if (!used[v] && edge(last, v)) {
        used[v] = 1;
        path.push_back(v);
        self(self);
        path.pop_back();
        used[v] = 0;
      }
  };
  for (int s = 0; s < nv; ++s) {
    path = {s};
    used.assign(nv, 0);
    used[s] = 1;
    extend(extend);
  }
  std::sort(e.apartments.begin(), e.apartments.end());
  return e;
}

inline CatalogEntry arrangement_entry(std::string name, const Arrangement& a) {
  CatalogEntry e;
  e.name = std::move(name);
  e.faces = enumerate_faces(a);
  if (is_simplicial(*e.faces).simplicial) e.complex = arrangement_complex(*e.faces).complex;
  return e;
}

inline CatalogEntry building_entry(int n, int q) {
  CatalogEntry e;
  e.name = "building:" + std::to_string(n) + ":" + std::to_string(q);
  e.building = build_building(n, q);
  e.complex = e.building->complex;
  return e;
}

inline int parse_int(const std::string& s, const std::string& what);

/// "A3" -> ('A', 4 coordinates); "B3" -> ('B', 3).
inline std::pair<char, int> coxeter_type(const std::string& t) {
  if (t.size() < 2) fail(ErrorKind::ParseError, "Coxeter type like A3 expected");
  int k = parse_int(t.substr(1), "Coxeter rank");
  return {t[0], t[0] == 'A' ? k + 1 : k};
}

inline int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::ParseError, "bad " + what + " '" + s + "'");
}

/// Entry by name, with or without a leading '@': hexagon, petersen, ngon:N,
/// octants:N, coxeter:A3 (Coxeter type), generic4, building:N:Q.
inline CatalogEntry make_entry(std::string spec) {
  if (!spec.empty() && spec.front() == '@') spec.erase(0, 1);
  auto part = split(spec, ':');
  const std::string& kind = part[0];
  auto args = [&](std::size_t k) {
    if (part.size() != k + 1) fail(ErrorKind::ParseError, "catalog entry '" + spec + "' expects " + std::to_string(k) + " parameter(s)");
  };
  if (kind == "hexagon") {
    args(0);
    return gen_hexagon();
  }
  if (kind == "petersen") {
    args(0);
    return gen_petersen();
  }
  if (kind == "ngon") {
    args(1);
    return gen_ngon(parse_int(part[1], "n"));
  }
  if (kind == "octants") {
    args(1);
    return arrangement_entry(spec, boolean_arrangement(parse_int(part[1], "dimension")));
  }
  if (kind == "coxeter") {
    args(1);
    auto [family, n] = coxeter_type(part[1]);
    return arrangement_entry(spec, coxeter_arrangement(family, n));
  }
  if (kind == "generic4") {
    args(0);
    return arrangement_entry(spec, generic_four_planes());
  }
  if (kind == "building") {
    args(2);
    return building_entry(parse_int(part[1], "n"), parse_int(part[2], "q"));
  }
  fail(ErrorKind::ParseError, "unknown catalog entry '" + spec + "'");
}

/// Entries listed by `catalog` and swept by the acceptance run.
inline std::vector<std::string> catalog_names() {
  return {"hexagon",   "ngon:3",     "ngon:4",     "ngon:5",     "ngon:6",     "ngon:7",   "ngon:8",      "petersen",
          "octants:3", "coxeter:A2", "coxeter:A3", "coxeter:B3", "coxeter:D4", "generic4", "building:3:2"};
}

/// A catalog entry for '@name', otherwise a complex read from a file.
inline CatalogEntry load_entry(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return make_entry(arg);
  std::ifstream in(arg);
  if (!in) fail(ErrorKind::Precondition, "cannot open '" + arg + "'");
  CatalogEntry e;
  e.name = arg;
  e.complex = parse_complex(in);
  return e;
}

inline Complex load_complex(const std::string& arg) { return load_entry(arg).cx(); }

/// The bundled structure, else the metric one; nullopt when the gate property fails.
inline std::optional<MetricStructure> default_structure(const CatalogEntry& e) {
  if (e.bundled) return e.bundled;
  if (!check_gate_property(e.cx()).holds) return std::nullopt;
  return metric_structure(e.cx());
}

// ---- generator self-checks -----------------------------------------------------------

/// Clockwise structure against the metric one: on even n the gates exist and
/// differ somewhere from the clockwise projections.
inline Report ngon_report(const CatalogEntry& e) {
  const Complex& cx = e.cx();
  Report r;
  r.merge(check_P(cx, e.bundled->P));
  r.merge(check_R(cx, e.bundled->R));
  r.merge(check_S(cx, e.bundled->S));
  GateResult gate = check_gate_property(cx);
  r.info("gate_property", gate.holds ? "holds" : "fails");
  if (!gate.holds) return r;
  r.declare("NGON.nonmetrical");
  std::string witness;
  for (ChamberId c = 0; c < cx.num_chambers() && witness.empty(); ++c)
    for (FaceId f = 0; f < cx.num_faces() && witness.empty(); ++f)
      if (e.bundled->P(f, c) != gate.at(cx, f, c))
        witness = "F=" + cx.face_name(f) + " C=" + cx.chamber_name(c) + " clockwise=" + cx.chamber_name(e.bundled->P(f, c)) +
                  " gate=" + cx.chamber_name(gate.at(cx, f, c));
  if (witness.empty())
    r.fail("NGON.nonmetrical", "clockwise projections coincide with gates");
  else
    r.info("NGON.nonmetrical.witness", witness);
  return r;
}

struct TwoNearestWitness {
  FaceId face = -1;
  ChamberId chamber = -1;
  std::vector<ChamberId> nearest;
};

/// First (F, C) with two chambers of the star of F nearest to C.
inline std::optional<TwoNearestWitness> two_nearest_witness(const Complex& cx) {
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
      int best = -1;
      std::vector<ChamberId> nearest;
      for (ChamberId d : cx.residue(f)) {
        int k = cx.dist(c, d);
        if (best < 0 || k < best) {
          best = k;
          nearest = {d};
        } else if (k == best) {
          nearest.push_back(d);
        }
      }
      if (nearest.size() == 2) return TwoNearestWitness{f, c, nearest};
    }
  return std::nullopt;
}

inline Report petersen_report(const CatalogEntry& e) {
  const Complex& cx = e.cx();
  Report r;
  std::vector<int> per_chamber(cx.num_chambers(), 0);
  for (const auto& a : e.apartments)
    for (ChamberId c : a) ++per_chamber[c];
  bool four = std::all_of(per_chamber.begin(), per_chamber.end(), [](int k) { return k == 4; });
  r.expect("PETERSEN.counts", cx.num_vertices() == 10 && cx.num_chambers() == 15 && e.apartments.size() == 10 && four,
           std::to_string(cx.num_vertices()) + "/" + std::to_string(cx.num_chambers()) + "/" + std::to_string(e.apartments.size()));
  r.declare("PETERSEN.hexagons");
  for (const auto& a : e.apartments) {
    std::map<VertexId, int> degree;
    for (ChamberId c : a)
      for (VertexId v : cx.chamber_vertices(c)) ++degree[v];
    bool cycle = a.size() == 6 && degree.size() == 6;
    for (auto [v, k] : degree) cycle = cycle && k == 2;
    if (!cycle) r.fail("PETERSEN.hexagons", join_map(a, ",", [&](ChamberId c) { return cx.chamber_name(c); }));
  }
  GateResult gate = check_gate_property(cx);
  r.expect("PETERSEN.no_gate", !gate.holds, "gate property unexpectedly holds");
  auto w = two_nearest_witness(cx);
  r.declare("PETERSEN.two_nearest");
  if (!w) {
    r.fail("PETERSEN.two_nearest", "no face has two nearest chambers");
    return r;
  }
  int through = 0;
  for (const auto& a : e.apartments) {
    bool has_c = std::binary_search(a.begin(), a.end(), w->chamber);
    bool has_f = std::any_of(a.begin(), a.end(), [&](ChamberId d) { return cx.contains(d, w->face); });
    if (has_c && has_f) ++through;
  }
  std::string desc = "F=" + cx.face_name(w->face) + " C=" + cx.chamber_name(w->chamber) + " nearest=" +
                     join_map(w->nearest, "|", [&](ChamberId d) { return cx.chamber_name(d); }) + " d=" +
                     std::to_string(cx.dist(w->chamber, w->nearest.front())) + " apartments=" + std::to_string(through);
  r.info("PETERSEN.witness", desc);
  if (through != 2) r.fail("PETERSEN.two_nearest", desc);
  return r;
}

/// Face and chamber counts of an arrangement entry.
inline Report arrangement_entry_report(const CatalogEntry& e) {
  const FaceEnumeration& fe = *e.faces;
  Report r;
  long long vertices = std::count(fe.rank.begin(), fe.rank.end(), 1);
  r.info("hyperplanes", std::to_string(fe.arrangement.size()));
  r.info("faces", std::to_string(fe.size()));
  r.info("chambers", std::to_string(fe.chambers.size()));
  r.info("rays", std::to_string(vertices));
  r.info("simplicial", e.complex ? "yes" : "no");
  auto part = split(e.name, ':');
  if (part[0] == "coxeter") {
    auto [family, n] = coxeter_type(part[1]);
    long long expect = coxeter_group_order(family, n);
    r.expect("ARR.chambers", static_cast<long long>(fe.chambers.size()) == expect,
             std::to_string(fe.chambers.size()) + " vs group order " + std::to_string(expect));
  }
  if (e.complex) r.expect("ARR.complex", e.complex->num_faces() == fe.size(), "face counts differ");
  return r;
}

/// Self-checks of a catalog entry.
inline Report entry_report(const CatalogEntry& e) {
  Report r;
  if (e.complex) {
    r.info("rank", std::to_string(e.complex->rank()));
    r.info("vertices", std::to_string(e.complex->num_vertices()));
    r.info("chambers", std::to_string(e.complex->num_chambers()));
    r.info("thin", is_thin(*e.complex).thin ? "yes" : "no");
  }
  if (e.bundled) r.merge(ngon_report(e));
  if (e.name == "petersen") r.merge(petersen_report(e));
  if (e.faces) r.merge(arrangement_entry_report(e));
  if (e.building) {
    Building b = *e.building;
    r.merge(building_counts(b));
  }
  return r;
}

}  // namespace shellax
