#include "helpers.hpp"
#include "shellax/catalog.hpp"
#include "shellax/walks.hpp"

using namespace shellax;

namespace {

// pi P computed by hand, independent of the solver.
std::vector<Rational> step(const std::vector<Rational>& pi, const std::vector<std::vector<Rational>>& P) {
  std::vector<Rational> out(pi.size(), Rational(0));
  for (std::size_t c = 0; c < pi.size(); ++c)
    for (std::size_t d = 0; d < pi.size(); ++d) out[d] += pi[c] * P[c][d];
  return out;
}

}  // namespace

TEST(Walks, HexagonVertexWalkIsUniform) {
  CatalogEntry e = gen_hexagon();
  MetricStructure m = metric_structure(e.cx());
  SigmaSource s = SigmaSource::from_projection(e.cx(), m.P);
  WalkChain w = walk(s, uniform_rank_weights(s, 1));
  ASSERT_EQ(w.pi.size(), 6u);
  for (const auto& p : w.pi) EXPECT_EQ(p, Rational(1, 6));
  EXPECT_EQ(step(w.pi, w.P), w.pi);
  EXPECT_TRUE(w.uniform);
  EXPECT_TRUE(w.commutes);
  for (const auto& row : w.P) {
    Rational sum = 0;
    for (const auto& x : row) sum += x;
    EXPECT_EQ(sum, 1);
  }
}

TEST(Walks, SkewedWeightsStillStationary) {
  CatalogEntry e = make_entry("coxeter:A3");
  MetricStructure m = metric_structure(e.cx());
  SigmaSource s = SigmaSource::from_projection(e.cx(), m.P);
  auto verts = s.rank_class(1);
  FaceWeights w;
  Rational left = 1;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    Rational x(1, static_cast<long long>(2 + i));
    x *= left;
    w.emplace_back(verts[i], x);
    left -= x;
  }
  w.emplace_back(verts.back(), left);
  WalkChain chain = walk(s, w);
  EXPECT_EQ(step(chain.pi, chain.P), chain.pi);
  Rational total = 0;
  for (const auto& p : chain.pi) total += p;
  EXPECT_EQ(total, 1);
  EXPECT_TRUE(chain.report.all_passed());
}

TEST(Walks, ReducibleAndBadWeights) {
  CatalogEntry e = gen_hexagon();
  MetricStructure m = metric_structure(e.cx());
  SigmaSource s = SigmaSource::from_projection(e.cx(), m.P);
  EXPECT_ERROR_KIND(walk(s, FaceWeights{{Complex::empty_face(), Rational(1)}}), ErrorKind::ReducibleChain);
  EXPECT_ERROR_KIND(walk(s, FaceWeights{{1, Rational(1, 2)}}), ErrorKind::Precondition);
  EXPECT_ERROR_KIND(walk(s, FaceWeights{{1, Rational(-1)}, {2, Rational(2)}}), ErrorKind::Precondition);
}

TEST(Walks, Rank3Harness) {
  Report a3 = rank3_harness(coxeter_arrangement('A', 4));
  EXPECT_TRUE(a3.all_passed());
  EXPECT_EQ(a3.info_value("simplicial"), "yes");
  EXPECT_EQ(a3.info_value("C[1,2]"), "holds");
  Report g = rank3_harness(generic_four_planes());
  EXPECT_TRUE(g.all_passed());
  EXPECT_EQ(g.info_value("simplicial"), "no");
  EXPECT_EQ(g.info_value("C[2,3]"), "fails");
  EXPECT_EQ(g.info_value("walk.uniform"), "no");
  EXPECT_ERROR_KIND(rank3_harness(lines_arrangement(3)), ErrorKind::RankMismatch);
}

TEST(Walks, GenericFourIsNotUniform) {
  FaceEnumeration fe = enumerate_faces(generic_four_planes());
  Lrb lrb = arrangement_lrb(fe);
  SigmaSource s = SigmaSource::from_lrb(lrb);
  Report r = check_uniformity(s);
  EXPECT_FALSE(r.passed("U"));
  EXPECT_TRUE(r.passed("U.implies.C"));
  EXPECT_EQ(r.info_value("C.all"), "fails");
}

TEST(Walks, UniformOnSmallCoxeter) {
  for (auto [f, n] : {std::pair{'A', 4}, std::pair{'B', 3}}) {
    FaceEnumeration fe = enumerate_faces(coxeter_arrangement(f, n));
    Lrb lrb = arrangement_lrb(fe);
    SigmaSource s = SigmaSource::from_lrb(lrb);
    EXPECT_TRUE(check_uniformity(s).all_passed()) << f << n;
    EXPECT_TRUE(check_commutativity(s, false).all_passed()) << f << n;
  }
}

TEST(Walks, TypeProductCountsLocalFlags) {
  for (const auto& name : {"hexagon", "coxeter:A3"}) {
    CatalogEntry e = make_entry(name);
    const Complex& cx = e.cx();
    ASSERT_TRUE(cx.labelled());
    MetricStructure m = metric_structure(cx);
    SigmaSource s = SigmaSource::from_projection(cx, m.P);
    LocalFlagTable t = local_flags(cx, m.R, true);
    const unsigned all = (1u << cx.num_labels()) - 1u;
    auto chambers = s.type_class(all);
    for (unsigned j = 0; j <= all; ++j) {
      auto coef = sigma_product(s, s.type_class(j), chambers);
      for (ChamberId d = 0; d < cx.num_chambers(); ++d) EXPECT_EQ(coef[cx.chamber_face(d)], t.f[d][j]) << name << " J=" << j;
    }
    EXPECT_TRUE(check_equidistribution(cx, m.P, true).all_passed()) << name;
  }
}

TEST(Walks, ProjectionProductsNeedAChamber) {
  CatalogEntry e = gen_hexagon();
  MetricStructure m = metric_structure(e.cx());
  SigmaSource s = SigmaSource::from_projection(e.cx(), m.P);
  EXPECT_ERROR_KIND(s.product(1, 2), ErrorKind::ProductUndefined);
  EXPECT_ERROR_KIND(check_uniformity(s), ErrorKind::ProductUndefined);
}

TEST(Walks, StationaryOutput) {
  CatalogEntry e = gen_hexagon();
  MetricStructure m = metric_structure(e.cx());
  SigmaSource s = SigmaSource::from_projection(e.cx(), m.P);
  WalkChain w = walk(s, uniform_rank_weights(s, 1));
  std::ostringstream out;
  write_stationary(out, s, w, Format::Tsv);
  EXPECT_NE(out.str().find("pi\t0,1\t1/6"), std::string::npos) << out.str();
}
