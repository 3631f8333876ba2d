// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
// --allow-fail N (repeatable) makes the exit status 0 when exactly the listed
// criteria fail; the lines themselves are printed unchanged.

#include "shellax/buildings.hpp"
#include "shellax/catalog.hpp"
#include "shellax/flags.hpp"
#include "shellax/linext.hpp"
#include "shellax/lrb.hpp"
#include "shellax/shelling.hpp"
#include "shellax/walks.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <set>

using namespace shellax;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<void(Outcome&)> run;
};

std::vector<CatalogEntry> thin_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& name : catalog_names()) {
    CatalogEntry e = make_entry(name);
    if (e.complex && is_thin(*e.complex).thin) out.push_back(std::move(e));
  }
  return out;
}

long long reduced_euler_by_faces(const Complex& cx, int k) {
  long long chi = 0;
  for (FaceId f = 0; f < cx.num_faces(); ++f)
    if (cx.face_rank(f) <= k) chi += cx.face_rank(f) % 2 ? 1 : -1;
  return chi;
}

ChamberId opposite_of(const Building& b, ChamberId c) {
  const int top = b.n * (b.n - 1) / 2;
  for (ChamberId d = 0; d < b.complex.num_chambers(); ++d)
    if (b.complex.dist(c, d) == top) return d;
  return -1;
}

void free_lrb_criterion(Outcome& o) {
  o.require(free_product({2, 1}, {3, 5, 4, 1, 6}) == std::vector<int>{2, 1, 3, 5, 4, 6}, "free product");
  Lrb f6 = free_lrb(6);
  o.require(f6.name(f6.mul(f6.parse("(2,1)"), f6.parse("(3,5,4,1,6)"))) == "(2,1,3,5,4,6)", "product in F6 table");
  Lrb s = free_lrb(3);
  o.require(s.size() == 16, "F3 size " + std::to_string(s.size()));
  o.require(s.chambers().size() == 6, "F3 chambers");
  Report r = check_lrb(s);
  const auto* p2 = r.find("P2");
  o.require(p2 && !p2->pass() && !p2->witnesses.empty(), "P2 should fail with a witness");
  if (p2 && !p2->witnesses.empty()) o.notes.push_back("P2 witness " + p2->witnesses.front());
}

void round_trip_criterion(Outcome& o) {
  for (const auto& name : {"hexagon", "ngon:5", "ngon:6", "ngon:7", "ngon:8", "coxeter:A3", "coxeter:B3", "octants:3"}) {
    CatalogEntry e = make_entry(name);
    auto m = default_structure(e);
    if (!m) {
      o.require(false, std::string(name) + " has no structure");
      continue;
    }
    const Complex& cx = e.cx();
    o.require(s_to_p(cx, r_to_s(cx, p_to_r(cx, m->P))) == m->P, std::string(name) + " round trip");
    o.require(check_P(cx, m->P).all_passed(), std::string(name) + " P");
    o.require(check_R(cx, m->R).all_passed(), std::string(name) + " R");
    o.require(check_S(cx, m->S).all_passed(), std::string(name) + " S");
  }
}

void gate_criterion(Outcome& o) {
  int gated = 0, ungated = 0;
  for (const auto& name : catalog_names()) {
    CatalogEntry e = make_entry(name);
    if (!e.complex) continue;
    bool holds = check_gate_property(*e.complex).holds;
    bool built = true;
    try {
      metric_structure(*e.complex);
    } catch (const Error& err) {
      built = false;
      if (err.kind() != ErrorKind::GatePropertyFails) o.require(false, name + ": " + err.what());
    }
    o.require(holds == built, name + " gate/metric disagree");
    (holds ? gated : ungated)++;
  }
  CatalogEntry p = make_entry("petersen");
  Report r = petersen_report(p);
  o.require(r.all_passed(), "petersen report");
  o.notes.push_back("gated " + std::to_string(gated) + ", ungated " + std::to_string(ungated) + "; " + r.info_value("PETERSEN.witness"));
}

void comp_criterion(Outcome& o) {
  int n = 0;
  for (const auto& e : thin_catalog()) {
    auto m = default_structure(e);
    if (!m) continue;
    const Complex& cx = e.cx();
    for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
      std::vector<FaceId> restr(cx.num_chambers());
      for (ChamberId d = 0; d < cx.num_chambers(); ++d) restr[d] = m->R(c, d);
      o.require(restriction_to_order(cx, restr, true) == restriction_to_order(cx, restr, false), e.name + " C=" + cx.chamber_name(c));
    }
    ++n;
  }
  o.require(n >= 10, "too few thin complexes");
  o.notes.push_back(std::to_string(n) + " thin complexes");
}

void flag_criterion(Outcome& o) {
  CatalogEntry hex = gen_hexagon();
  const Complex& cx = hex.cx();
  FlagPair p = flag_vectors(cx);
  o.require(p.h.v == std::vector<long long>{1, 2, 2, 1}, "hexagon h by inversion");
  MetricStructure m = metric_structure(cx);
  for (ChamberId c = 0; c < cx.num_chambers(); ++c)
    o.require(beta_from_restriction(cx, m.R, c, true).v == std::vector<long long>{1, 2, 2, 1}, "beta from " + cx.chamber_name(c));
  CatalogEntry oct = make_entry("octants:3");
  MetricStructure mo = metric_structure(oct.cx());
  LocalFlagTable t = local_flags(oct.cx(), mo.R, false);
  o.require(oct.cx().num_chambers() == 8, "octant chambers");
  for (ChamberId d = 0; d < oct.cx().num_chambers(); ++d)
    for (int j = 0; j <= 3; ++j) o.require(t.h[d][j] == binomial(3, j), "local h at " + oct.cx().chamber_name(d));
}

void ds_criterion(Outcome& o) {
  int n = 0;
  for (const auto& e : thin_catalog()) {
    auto m = default_structure(e);
    if (!m) continue;
    const Complex& cx = e.cx();
    ShellingOrder order = first_linear_extension(m->S.le[0]);
    o.require(reverse_shelling_check(cx, order).all_passed(), e.name + " reversal");
    o.require(ds_check(cx, flag_vectors(cx).h).all_passed(), e.name + " DS");
    ++n;
  }
  Building b = build_building(3, 2);
  Report ds = ds_check(b.complex, flag_vectors(b.complex).h);
  o.require(!ds.all_passed(), "building n=3 q=2 should fail DS");
  o.notes.push_back(std::to_string(n) + " thin complexes; building DS fails as required");
}

void commutativity_criterion(Outcome& o) {
  for (auto [family, dim, expect_all] : {std::tuple{'A', 4, true}, std::tuple{'B', 3, true}, std::tuple{'D', 4, false}}) {
    FaceEnumeration fe = enumerate_faces(coxeter_arrangement(family, dim));
    Lrb lrb = arrangement_lrb(fe);
    SigmaSource s = SigmaSource::from_lrb(lrb);
    Report r = check_commutativity(s, false);
    std::string name = std::string(1, family) + std::to_string(family == 'A' ? dim - 1 : dim);
    if (family == 'D') {
      o.require(fe.chambers.size() == 192 && fe.arrangement.size() == 12, "D4 size");
      int failing = 0;
      for (const auto& c : r.checks()) failing += !c.pass();
      o.require(!expect_all && failing > 0, "D4: all C[i,j] hold (" + std::to_string(fe.size()) + " faces, 0 failing pairs)");
    } else {
      o.require(r.all_passed(), name + " commutativity");
    }
  }
}

void rank3_criterion(Outcome& o) {
  struct Case {
    std::string name;
    Arrangement a;
    bool simplicial;
  };
  for (const auto& c : {Case{"B3", coxeter_arrangement('B', 3), true}, Case{"A3", coxeter_arrangement('A', 4), true},
                        Case{"generic4", generic_four_planes(), false}}) {
    Report r = rank3_harness(c.a);
    o.require(r.all_passed(), c.name + " harness");
    std::string want = c.simplicial ? "holds" : "fails";
    o.require(r.info_value("simplicial") == (c.simplicial ? "yes" : "no"), c.name + " simplicial");
    for (const char* id : {"C[1,2]", "C[1,3]", "C[2,3]"}) o.require(r.info_value(id) == want, c.name + " " + id);
    o.require(r.info_value("walk.uniform") == (c.simplicial ? "yes" : "no"), c.name + " walk");
    if (c.name == "generic4") o.require(r.info_value("chambers") == "14", "generic4 chambers");
  }
}

void building_criterion(Outcome& o) {
  struct Case {
    int n, q;
    int chambers, apartments, per;
  };
  for (const auto& c : {Case{3, 2, 21, 28, 8}, Case{4, 2, 315, 840, 64}}) {
    Building b = build_building(c.n, c.q);
    Report counts = building_counts(b);
    std::string tag = "n=" + std::to_string(c.n);
    o.require(counts.all_passed(), tag + " counts report");
    o.require(b.complex.num_chambers() == c.chambers, tag + " chambers");
    o.require(static_cast<int>(b.frames.size()) == c.apartments, tag + " apartments");
    o.require(static_cast<int>(b.chamber_frames[0].size()) == c.per, tag + " apartments per chamber");
    Report dual = apartment_count_identity(b, 0, opposite_of(b, 0));
    o.require(dual.all_passed(), tag + " duality identity");
    o.require(dual.passed("DUAL.inversion.CD") && dual.passed("DUAL.inversion.DC"), tag + " inversion formulas");
  }
}

void hq_criterion(Outcome& o) {
  auto h = descent_polynomials(4);
  const std::vector<std::vector<long long>> listed{{1}, {0, 1, 1, 1}, {0, 1, 2, 1, 1}, {0, 0, 0, 1, 1, 1},
                                                   {0, 1, 1, 1}, {0, 0, 1, 1, 2, 1}, {0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 0, 0, 1}};
  for (unsigned j = 0; j < 8; ++j) o.require(h[j].c == listed[j], "n=4 polynomial " + std::to_string(j));
  for (int n : {3, 4}) {
    auto p = descent_polynomials(n);
    const int top = n * (n - 1) / 2;
    const unsigned all = (1u << (n - 1)) - 1u;
    for (unsigned j = 0; j <= all; ++j)
      for (int k = 0; k <= top; ++k) o.require(p[j].coeff(k) == p[all & ~j].coeff(top - k), "coefficient identity n=" + std::to_string(n));
  }
  for (auto [n, q] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
    Building b = build_building(n, q);
    MetricStructure m = metric_structure(b.complex);
    auto p = descent_polynomials(n);
    for (ChamberId c : {0, b.complex.num_chambers() - 1}) {
      FlagVector beta = beta_from_restriction(b.complex, m.R, c, true);
      for (std::size_t j = 0; j < p.size(); ++j)
        o.require(Rational(beta[j]) == p[j].eval(q), "beta n=" + std::to_string(n) + " q=" + std::to_string(q));
    }
  }
}

void skeleton_criterion(Outcome& o) {
  for (const auto& name : {"ngon:3", "ngon:4", "ngon:5", "ngon:6", "ngon:7", "ngon:8", "octants:3", "coxeter:B3"}) {
    CatalogEntry e = make_entry(name);
    const Complex& cx = e.cx();
    FlagVector beta = flag_vectors(cx, false).h;
    for (int k = 1; k <= cx.rank(); ++k) {
      long long s = skeleton_spheres(cx, beta, k);
      o.require((k % 2 ? s : -s) == reduced_euler_by_faces(cx, k), std::string(name) + " k=" + std::to_string(k));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> allowed;
  app.add_option("--allow-fail", allowed, "Criteria whose failure is expected");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "free LRB product, F3 and its P2 witness", 1, free_lrb_criterion},
      {2, "P/R/S round trip on hexagon, n-gons, A3, B3", 10, round_trip_criterion},
      {3, "metric structure exactly where gates exist; Petersen", 5, gate_criterion},
      {4, "refined and unrefined closures agree on thin complexes", 5, comp_criterion},
      {5, "flag vectors of the hexagon and local octant table", 5, flag_criterion},
      {6, "reversal and Dehn-Sommerville on thin complexes", 10, ds_criterion},
      {7, "sigma commutativity on A3, B3, D4", 300, commutativity_criterion},
      {8, "rank-3 simpliciality, commutation and walks", 30, rank3_criterion},
      {9, "building and apartment counts", 300, building_criterion},
      {10, "h_J(q) polynomials and their duality", 300, hq_criterion},
      {11, "skeleton sphere counts", 5, skeleton_criterion},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_s, "runtime over " + std::to_string(c.limit_s) + " s");
    if (!o.ok) failed.insert(c.id);
    std::printf("%s %2d %s (%.2f s)", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
    for (const auto& n : o.notes) std::printf(" | %s", n.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::set<int> expected(allowed.begin(), allowed.end());
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  return failed == expected ? 0 : 1;
}
