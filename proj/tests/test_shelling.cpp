#include "helpers.hpp"
#include "oracles.hpp"
#include "shellax/catalog.hpp"
#include "shellax/linext.hpp"
#include "shellax/shelling.hpp"

#include <numeric>
#include <random>

using namespace shellax;

namespace {

void expect_matches_oracle(const Complex& cx, const ShellingOrder& order, const std::string& what) {
  auto ch = oracle::chamber_sets(cx);
  auto expect = oracle::shelling_restrictions(ch, order);
  auto why = shelling_violation(cx, order);
  ASSERT_EQ(expect.has_value(), !why.has_value()) << what;
  if (!expect) {
    EXPECT_ERROR_KIND(verify_shelling(cx, order), ErrorKind::NotAShelling);
    return;
  }
  ShellingCertificate cert = verify_shelling(cx, order);
  for (int d = 0; d < cx.num_chambers(); ++d) EXPECT_EQ(cx.face_vertices(cert.restriction[d]), (*expect)[d]) << what;
}

}  // namespace

TEST(Shelling, HexagonClockwise) {
  Complex cx = gen_hexagon().cx();
  ShellingCertificate cert = verify_shelling(cx, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(cert.restriction[0], Complex::empty_face());
  EXPECT_EQ(cx.face_name(cert.restriction[1]), "2");
  EXPECT_EQ(cert.restriction[5], cx.chamber_face(5));
  EXPECT_EQ(sphere_count(cx, cert), 1);
}

TEST(Shelling, HexagonBadOrder) {
  Complex cx = gen_hexagon().cx();
  EXPECT_ERROR_KIND(verify_shelling(cx, {0, 3, 1, 2, 4, 5}), ErrorKind::NotAShelling);
  EXPECT_ERROR_KIND(verify_shelling(cx, {0, 1, 2}), ErrorKind::Precondition);
}

TEST(Shelling, RandomOrdersMatchOracle) {
  std::mt19937_64 rng(3);
  int shellings = 0, others = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int rank = 1 + static_cast<int>(rng() % 3);
    Complex cx = build_complex(oracle::random_complex(rng, rank, 2 + static_cast<int>(rng() % 7), rank + 4));
    ShellingOrder order(cx.num_chambers());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    expect_matches_oracle(cx, order, "trial " + std::to_string(trial));
    (shelling_violation(cx, order) ? others : shellings)++;
  }
  EXPECT_GT(shellings, 10);
  EXPECT_GT(others, 10);
}

TEST(Shelling, CoxeterOrdersMatchOracle) {
  std::mt19937_64 rng(9);
  for (const auto& name : {"octants:3", "coxeter:A3", "coxeter:B3"}) {
    CatalogEntry e = make_entry(name);
    const Complex& cx = e.cx();
    MetricStructure m = metric_structure(cx);
    for (int k = 0; k < 5; ++k) {
      ChamberId c = static_cast<ChamberId>(rng() % cx.num_chambers());
      ShellingOrder order = first_linear_extension(m.S.le[c]);
      expect_matches_oracle(cx, order, name);
      ShellingCertificate cert = verify_shelling(cx, order);
      EXPECT_EQ(sphere_count(cx, cert), 1) << name;
      for (ChamberId d = 0; d < cx.num_chambers(); ++d) EXPECT_EQ(cert.restriction[d], m.R(c, d));
    }
  }
}

TEST(Shelling, ReverseOnSpheres) {
  for (const auto& name : {"hexagon", "octants:3", "coxeter:A3"}) {
    CatalogEntry e = make_entry(name);
    const Complex& cx = e.cx();
    MetricStructure m = metric_structure(cx);
    Report r = reverse_shelling_check(cx, first_linear_extension(m.S.le[0]));
    EXPECT_TRUE(r.all_passed()) << name;
  }
  CatalogEntry p = make_entry("petersen");
  ShellingOrder order(p.cx().num_chambers());
  std::iota(order.begin(), order.end(), 0);
  EXPECT_ERROR_KIND(reverse_shelling_check(p.cx(), order), ErrorKind::NotThin);
}

TEST(Shelling, LinksInheritShellings) {
  CatalogEntry e = make_entry("coxeter:A3");
  const Complex& cx = e.cx();
  MetricStructure m = metric_structure(cx);
  ShellingOrder order = first_linear_extension(m.S.le[0]);
  for (FaceId f = 0; f < cx.num_faces(); ++f) {
    if (cx.face_rank(f) == cx.rank()) continue;
    LinkShelling ls = link_shelling(cx, order, f);
    EXPECT_EQ(ls.link.num_chambers(), static_cast<int>(cx.residue(f).size()));
    EXPECT_EQ(ls.link.rank(), cx.rank() - cx.face_rank(f));
  }
  EXPECT_ERROR_KIND(link_shelling(cx, order, cx.chamber_face(0)), ErrorKind::Precondition);
}

TEST(Shelling, PointsAreSpheres) {
  Complex cx = complex_from("vertex a\nvertex b\nvertex c\nchamber a\nchamber b\nchamber c\n");
  ShellingCertificate cert = verify_shelling(cx, {2, 0, 1});
  EXPECT_EQ(sphere_count(cx, cert), 2);
}

TEST(Shelling, OrderFileRoundTrip) {
  Complex cx = gen_hexagon().cx();
  std::istringstream in("e2\ne3\n2,1\ne4\ne5\ne0\n");
  ShellingOrder order = parse_shelling_order(in, cx);
  ASSERT_EQ(order.size(), 6u);
  EXPECT_EQ(order[2], 1);
  std::ostringstream out;
  write_certificate(out, cx, verify_shelling(cx, order));
  EXPECT_NE(out.str().find("R e2 -> -"), std::string::npos) << out.str();
}
