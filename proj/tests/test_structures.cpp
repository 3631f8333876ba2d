#include "helpers.hpp"
#include "oracles.hpp"
#include "shellax/catalog.hpp"
#include "shellax/structures.hpp"

#include <numeric>
#include <random>

using namespace shellax;

namespace {

bool all_pass(const Report& r) { return r.all_passed(); }

std::vector<int> distance_order(const std::vector<std::vector<int>>& d, int c) {
  std::vector<int> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[c][a] < d[c][b]; });
  return order;
}

}  // namespace

TEST(Structures, HexagonMetricSatisfiesAll) {
  Complex cx = gen_hexagon().cx();
  MetricStructure m = metric_structure(cx);
  EXPECT_TRUE(all_pass(check_P(cx, m.P)));
  EXPECT_TRUE(all_pass(check_R(cx, m.R)));
  EXPECT_TRUE(all_pass(check_S(cx, m.S)));
  EXPECT_TRUE(all_pass(check_round_trips(cx, m.P, m.R, m.S)));
  OppositionMap opp = find_opposition(cx, m.R);
  for (int c = 0; c < 6; ++c) EXPECT_EQ(opp[c], (c + 3) % 6);
  EXPECT_TRUE(all_pass(check_opposite(cx, m.P, m.R, m.S, opp)));
}

TEST(Structures, IdentityOppositionBreaksP4) {
  Complex cx = gen_hexagon().cx();
  MetricStructure m = metric_structure(cx);
  OppositionMap id(6);
  std::iota(id.begin(), id.end(), 0);
  Report r = check_opposite(cx, m.P, m.R, m.S, id);
  EXPECT_FALSE(r.passed("P4"));
  EXPECT_FALSE(r.passed("R4"));
  EXPECT_TRUE(r.passed("OPP.involution"));
}

TEST(Structures, CoxeterRestrictionsAreDistanceShellings) {
  for (const auto& name : {"hexagon", "octants:3", "coxeter:A3", "coxeter:B3"}) {
    Complex cx = make_entry(name).cx();
    MetricStructure m = metric_structure(cx);
    auto ch = oracle::chamber_sets(cx);
    auto d = oracle::distances(ch);
    for (int c = 0; c < cx.num_chambers(); ++c) {
      auto restr = oracle::shelling_restrictions(ch, distance_order(d, c));
      ASSERT_TRUE(restr) << name;
      for (int e = 0; e < cx.num_chambers(); ++e) {
        EXPECT_EQ(cx.face_vertices(m.R(c, e)), (*restr)[e]) << name;
        for (int f = 0; f < cx.num_chambers(); ++f)
          EXPECT_EQ(m.S.le[c].test(e, f), d[c][e] + d[e][f] == d[c][f]);
      }
    }
  }
}

TEST(Structures, NgonBundledStructure) {
  for (int n = 3; n <= 8; ++n) {
    CatalogEntry e = gen_ngon(n);
    const Complex& cx = e.cx();
    ASSERT_TRUE(e.bundled);
    EXPECT_TRUE(all_pass(check_P(cx, e.bundled->P))) << n;
    EXPECT_TRUE(all_pass(check_R(cx, e.bundled->R))) << n;
    EXPECT_TRUE(all_pass(check_S(cx, e.bundled->S))) << n;
    EXPECT_TRUE(all_pass(check_round_trips(cx, e.bundled->P, e.bundled->R, e.bundled->S)));
    OppositionMap opp = find_opposition(cx, e.bundled->R);
    EXPECT_EQ(opp[0], n - 1);
    Report r = check_opposite(cx, e.bundled->P, e.bundled->R, e.bundled->S, opp);
    EXPECT_FALSE(r.passed("OPP.involution"));
    EXPECT_TRUE(r.has("OPP.equivalence"));
  }
}

TEST(Structures, OddNgonHasNoMetricStructure) {
  EXPECT_ERROR_KIND(metric_structure(gen_ngon(5).cx()), ErrorKind::GatePropertyFails);
  EXPECT_NO_THROW(metric_structure(gen_ngon(6).cx()));
}

TEST(Structures, ConversionsFromEachSide) {
  CatalogEntry e = make_entry("coxeter:A3");
  const Complex& cx = e.cx();
  MetricStructure m = metric_structure(cx);
  EXPECT_EQ(p_to_r(cx, m.P), m.R);
  EXPECT_EQ(r_to_s(cx, m.R), m.S);
  EXPECT_EQ(s_to_p(cx, m.S), m.P);
}

TEST(Structures, BrokenTablesAreCaught) {
  Complex cx = gen_hexagon().cx();
  MetricStructure m = metric_structure(cx);
  ProjectionTable p = m.P;
  FaceId v0 = cx.parse_face("0");
  p(v0, 2) = 2;  // e2 does not contain vertex 0
  EXPECT_FALSE(check_P(cx, p).passed("P1.i"));
  RestrictionFamily r = m.R;
  r(1, 1) = cx.parse_face("1");
  EXPECT_FALSE(check_R(cx, r).passed("R1"));
}

TEST(Structures, SampledModeAgrees) {
  Complex cx = make_entry("coxeter:A3").cx();
  MetricStructure m = metric_structure(cx);
  SOptions opt;
  opt.mode = S2Mode::Sampled;
  opt.cap = 50;
  opt.seed = 3;
  Report r = check_S(cx, m.S, opt);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.info_value("S2.mode"), "sampled");
}

TEST(Structures, ParseRejectsCycles) {
  Complex cx = gen_hexagon().cx();
  std::istringstream in("order e0: e1 < e2\norder e0: e2 < e1\n");
  EXPECT_ERROR_KIND(parse_structure(in, cx), ErrorKind::NotAPartialOrder);
  std::istringstream partial("proj 0 e0 -> e0\n");
  EXPECT_ERROR_KIND(parse_structure(partial, cx), ErrorKind::ParseError);
}

TEST(Structures, WrittenStructureParsesBack) {
  Complex cx = gen_hexagon().cx();
  MetricStructure m = metric_structure(cx);
  std::ostringstream out;
  write_projection(out, cx, m.P);
  write_restriction(out, cx, m.R);
  write_orders(out, cx, m.S);
  std::istringstream in(out.str());
  StructureInput s = parse_structure(in, cx);
  ASSERT_TRUE(s.P && s.R && s.S);
  EXPECT_EQ(*s.P, m.P);
  EXPECT_EQ(*s.R, m.R);
  EXPECT_EQ(*s.S, m.S);
}

TEST(Structures, RandomGatedComplexesAreConsistent) {
  std::mt19937_64 rng(5);
  int tried = 0;
  for (int trial = 0; trial < 200 && tried < 25; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 2);
    Complex cx = build_complex(oracle::random_complex(rng, rank, 2 + static_cast<int>(rng() % 8), rank + 4));
    if (!check_gate_property(cx).holds) continue;
    ++tried;
    MetricStructure m = metric_structure(cx);
    EXPECT_TRUE(check_P(cx, m.P).all_passed()) << trial;
    EXPECT_TRUE(check_round_trips(cx, m.P, m.R, m.S).all_passed()) << trial;
  }
  EXPECT_GT(tried, 5);
}
