#include "helpers.hpp"
#include "oracles.hpp"
#include "shellax/arrangement.hpp"
#include "shellax/lrb.hpp"

#include <set>

using namespace shellax;

namespace {

std::vector<int> word_of(const std::string& name) {
  std::vector<int> w;
  for (const auto& t : split(name.substr(1, name.size() - 2), ','))
    if (!t.empty()) w.push_back(std::stoi(t));
  return w;
}

std::set<std::vector<int>> face_set(const FaceEnumeration& fe) {
  std::set<std::vector<int>> out;
  for (const auto& x : fe.faces) out.insert(std::vector<int>(x.begin(), x.end()));
  return out;
}

}  // namespace

TEST(Lrb, FreeProductExample) {
  EXPECT_EQ(free_product({2, 1}, {3, 5, 4, 1, 6}), (std::vector<int>{2, 1, 3, 5, 4, 6}));
  EXPECT_EQ(oracle::word_product({2, 1}, {3, 5, 4, 1, 6}), (std::vector<int>{2, 1, 3, 5, 4, 6}));
}

TEST(Lrb, FreeTableMatchesWordOracle) {
  for (int n = 0; n <= 4; ++n) {
    Lrb s = free_lrb(n);
    for (int x = 0; x < s.size(); ++x)
      for (int y = 0; y < s.size(); ++y)
        ASSERT_EQ(word_of(s.name(s.mul(x, y))), oracle::word_product(word_of(s.name(x)), word_of(s.name(y))));
  }
}

TEST(Lrb, FreeOnThreeLetters) {
  Lrb s = free_lrb(3);
  EXPECT_EQ(s.size(), 16);
  EXPECT_EQ(s.chambers().size(), 6u);
  EXPECT_EQ(s.name(s.identity()), "()");
  Report r = check_lrb(s);
  EXPECT_TRUE(r.passed("LRB.associative"));
  EXPECT_TRUE(r.passed("LRB.deletion"));
  EXPECT_TRUE(r.passed("P1.i"));
  EXPECT_FALSE(r.passed("P2"));
  const auto* p2 = r.find("P2");
  ASSERT_NE(p2, nullptr);
  EXPECT_EQ(p2->witnesses.front(), "F=(1) C=(1,3,2) D=(1,2,3) FC=(1,3,2)");
  auto ranks = element_ranks(s);
  EXPECT_EQ(ranks[s.parse("(2,3,1)")], 3);
  EXPECT_EQ(ranks[s.parse("(2)")], 1);
}

TEST(Lrb, FreeScaleLimit) {
  EXPECT_ERROR_KIND(free_lrb(7), ErrorKind::ScaleExceeded);
  EXPECT_ERROR_KIND(free_lrb(-1), ErrorKind::BadN);
}

TEST(Lrb, FacesMatchGridSigns) {
  std::vector<Arrangement> arrs{boolean_arrangement(3), coxeter_arrangement('A', 3), coxeter_arrangement('A', 4),
                                coxeter_arrangement('B', 3), generic_four_planes(), lines_arrangement(4)};
  for (const auto& a : arrs) {
    FaceEnumeration fe = enumerate_faces(a);
    EXPECT_EQ(face_set(fe), oracle::grid_sign_vectors(a.normals, a.dim, 3)) << a.dim << " " << a.size();
  }
}

TEST(Lrb, CoxeterFaceCounts) {
  struct Case {
    char family;
    int n;
    int faces;
    int chambers;
  };
  for (const auto& c : {Case{'A', 4, 75, 24}, Case{'B', 3, 147, 48}, Case{'D', 4, 865, 192}}) {
    FaceEnumeration fe = enumerate_faces(coxeter_arrangement(c.family, c.n));
    EXPECT_EQ(fe.size(), c.faces) << c.family << c.n;
    EXPECT_EQ(static_cast<int>(fe.chambers.size()), c.chambers);
    EXPECT_EQ(coxeter_group_order(c.family, c.n), c.chambers);
  }
}

TEST(Lrb, ArrangementSemigroupIsLrb) {
  for (const auto& a : {coxeter_arrangement('B', 3), generic_four_planes()}) {
    Lrb s = arrangement_lrb(enumerate_faces(a));
    Report r = check_lrb(s);
    EXPECT_TRUE(r.all_passed());
  }
}

TEST(Lrb, TextRoundTrip) {
  Lrb s = free_lrb(2);
  std::ostringstream out;
  write_lrb(out, s);
  std::istringstream in(out.str());
  Lrb back = parse_lrb(in);
  ASSERT_EQ(back.size(), s.size());
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y) EXPECT_EQ(back.name(back.mul(x, y)), s.name(s.mul(x, y)));
  std::istringstream bad("elem e\n");
  EXPECT_ERROR_KIND(parse_lrb(bad), ErrorKind::ParseError);
}

TEST(Lrb, UngradedSupportsRejected) {
  // join semilattice 0 < a < b < t, 0 < c < t
  std::vector<std::string> names{"0", "a", "b", "c", "t"};
  auto join = [](int x, int y) {
    if (x == y || x == 0) return y;
    if (y == 0) return x;
    if ((x == 1 && y == 2) || (x == 2 && y == 1)) return 2;
    return 4;
  };
  std::vector<int> table;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) table.push_back(join(x, y));
  Lrb s = make_lrb(names, table);
  EXPECT_ERROR_KIND(support_ranks(s), ErrorKind::NotGraded);
}
