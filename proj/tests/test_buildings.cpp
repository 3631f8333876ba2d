#include "helpers.hpp"
#include "oracles.hpp"
#include "shellax/buildings.hpp"

#include <set>

using namespace shellax;

namespace {

// Every vector of F_q^n, and the set of those lying in the span of rows.
std::set<FqRow> span_of(const FqRows& rows, int n, int q) {
  std::set<FqRow> out;
  const long long total = ipow(q, static_cast<int>(rows.size()));
  for (long long code = 0; code < total; ++code) {
    FqRow v(n, 0);
    long long c = code;
    for (const auto& r : rows) {
      int a = static_cast<int>(c % q);
      c /= q;
      for (int i = 0; i < n; ++i) v[i] = (v[i] + a * r[i]) % q;
    }
    out.insert(v);
  }
  return out;
}

long long gaussian_binomial(int n, int k, int q) {
  long long num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

ChamberId some_opposite(const Building& b, ChamberId c) {
  const int top = b.n * (b.n - 1) / 2;
  for (ChamberId d = 0; d < b.complex.num_chambers(); ++d)
    if (b.complex.dist(c, d) == top) return d;
  return -1;
}

}  // namespace

TEST(Buildings, FourDimensionalPolynomials) {
  auto h = descent_polynomials(4);
  ASSERT_EQ(h.size(), 8u);
  // masks: bit i is label i+1
  EXPECT_EQ(h[0].c, (std::vector<long long>{1}));
  EXPECT_EQ(h[1].c, (std::vector<long long>{0, 1, 1, 1}));
  EXPECT_EQ(h[4].c, (std::vector<long long>{0, 1, 1, 1}));
  EXPECT_EQ(h[2].c, (std::vector<long long>{0, 1, 2, 1, 1}));
  EXPECT_EQ(h[3].c, (std::vector<long long>{0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(h[6].c, (std::vector<long long>{0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(h[5].c, (std::vector<long long>{0, 0, 1, 1, 2, 1}));
  EXPECT_EQ(h[7].c, (std::vector<long long>{0, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(h[2].str(), "q + 2q^2 + q^3 + q^4");
  EXPECT_EQ(h[0].str(), "1");
}

TEST(Buildings, DescentPolynomialsMatchPermutationStats) {
  for (int n = 2; n <= 6; ++n) {
    auto h = descent_polynomials(n);
    std::vector<std::map<int, long long>> expect(std::size_t{1} << (n - 1));
    for (const auto& s : oracle::permutation_stats(n)) ++expect[s.descents][s.inversions];
    for (std::size_t j = 0; j < h.size(); ++j)
      for (int k = 0; k <= n * (n - 1) / 2; ++k) EXPECT_EQ(h[j].coeff(k), expect[j][k]) << n << " " << j << " " << k;
  }
}

TEST(Buildings, PolynomialDuality) {
  for (int n = 2; n <= 6; ++n) {
    auto h = descent_polynomials(n);
    const unsigned all = (1u << (n - 1)) - 1u;
    for (unsigned j = 0; j <= all; ++j)
      for (Rational x : {Rational(2), Rational(3), Rational(-5, 3), Rational(1, 7)})
        EXPECT_EQ(h[j].eval(x), h[all].eval(x) * h[all & ~j].eval(1 / x));
  }
}

TEST(Buildings, SubspaceCountsAreGaussianBinomials) {
  for (int q : {2, 3, 5})
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= n; ++k) {
        if (ipow(q, n) > 700) continue;
        auto subs = subspaces_of_dim(n, k, q);
        EXPECT_EQ(static_cast<long long>(subs.size()), gaussian_binomial(n, k, q)) << n << " " << k << " " << q;
        std::set<std::set<FqRow>> spans;
        for (const auto& s : subs) spans.insert(span_of(s, n, q));
        EXPECT_EQ(spans.size(), subs.size());
      }
}

TEST(Buildings, IntersectionMatchesEnumeration) {
  for (int q : {2, 3}) {
    const int n = 4;
    auto planes = subspaces_of_dim(n, 2, q);
    auto solids = subspaces_of_dim(n, 3, q);
    for (std::size_t i = 0; i < planes.size(); i += 3)
      for (std::size_t j = 0; j < solids.size(); j += 2) {
        auto a = span_of(planes[i], n, q), b = span_of(solids[j], n, q);
        std::set<FqRow> both;
        for (const auto& v : a)
          if (b.count(v)) both.insert(v);
        EXPECT_EQ(span_of(fq_intersection(planes[i], solids[j], n, q), n, q), both);
        auto sum = fq_sum(planes[i], solids[j], q);
        EXPECT_EQ(static_cast<long long>(span_of(sum, n, q).size()), ipow(q, static_cast<int>(sum.size())));
      }
  }
}

TEST(Buildings, Counts) {
  for (auto [n, q] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
    Building b = build_building(n, q);
    EXPECT_EQ(b.complex.num_chambers(), q_factorial(n, q));
    Report r = building_counts(b);
    EXPECT_TRUE(r.all_passed()) << n << " " << q;
  }
  Building b = build_building(3, 2);
  enumerate_apartments(b);
  EXPECT_EQ(b.complex.num_vertices(), 14);
  EXPECT_EQ(b.frames.size(), 28u);
  EXPECT_EQ(b.complex.labels(), (std::vector<std::string>{"1", "2"}));
}

TEST(Buildings, FieldErrors) {
  EXPECT_ERROR_KIND(build_building(3, 4), ErrorKind::NonPrimeField);
  EXPECT_ERROR_KIND(build_building(3, 9), ErrorKind::NonPrimeField);
  EXPECT_ERROR_KIND(build_building(3, 6), ErrorKind::Precondition);
  EXPECT_ERROR_KIND(build_building(3, 1), ErrorKind::Precondition);
  EXPECT_ERROR_KIND(build_building(1, 2), ErrorKind::BadN);
  EXPECT_ERROR_KIND(build_building(3, 11), ErrorKind::ScaleExceeded);
  EXPECT_ERROR_KIND(build_building(6, 2), ErrorKind::ScaleExceeded);
}

TEST(Buildings, RelativePositionInverts) {
  Building b = build_building(3, 3);
  for (ChamberId c = 0; c < b.complex.num_chambers(); c += 5)
    for (ChamberId d = 0; d < b.complex.num_chambers(); d += 3) {
      Perm w = w_distance(b, c, d), v = w_distance(b, d, c);
      Perm id(3);
      std::iota(id.begin(), id.end(), 0);
      EXPECT_EQ(compose(w, v), id);
      EXPECT_EQ(inversions(w), b.complex.dist(c, d));
    }
}

TEST(Buildings, DualityAndApartmentCounts) {
  for (auto [n, q] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
    Building b = build_building(n, q);
    MetricStructure m = metric_structure(b.complex);
    HqResult hq = hq_polynomials(b, m);
    EXPECT_TRUE(hq.report.all_passed()) << n << " " << q;
    for (std::size_t j = 0; j < hq.poly.size(); ++j) EXPECT_EQ(Rational(hq.counted[j]), hq.poly[j].eval(q));
    ChamberId cbar = some_opposite(b, 0);
    ASSERT_GE(cbar, 0);
    EXPECT_TRUE(apartment_count_identity(b, 0, cbar).all_passed()) << n << " " << q;
    FlagVector h = flag_vectors(b.complex).h;
    EXPECT_FALSE(ds_check(b.complex, h).all_passed());
  }
}

TEST(Buildings, RetractionAndGates) {
  Building b = build_building(3, 2);
  enumerate_apartments(b);
  MetricStructure m = metric_structure(b.complex);
  for (int frame : {0, 5, 27}) {
    ChamberId c = b.frame_chambers[frame][0];
    EXPECT_TRUE(retraction_report(b, m, frame, c).all_passed()) << frame;
    EXPECT_TRUE(apartment_gate_report(b, m, frame).all_passed()) << frame;
  }
  ChamberId outside = -1;
  for (ChamberId c = 0; c < b.complex.num_chambers() && outside < 0; ++c)
    if (std::find(b.chamber_frames[c].begin(), b.chamber_frames[c].end(), 0) == b.chamber_frames[c].end()) outside = c;
  ASSERT_GE(outside, 0);
  EXPECT_ERROR_KIND(retraction(b, 0, outside, 0), ErrorKind::NotInApartment);
}

TEST(Buildings, OppositePairsSpanOneApartment) {
  Building b = build_building(3, 3);
  enumerate_apartments(b);
  for (ChamberId e = 0; e < b.complex.num_chambers(); e += 7) {
    ChamberId f = some_opposite(b, e);
    int frame = apartment_of_opposite(b, e, f);
    const auto& cs = b.frame_chambers[frame];
    EXPECT_NE(std::find(cs.begin(), cs.end(), e), cs.end());
    EXPECT_NE(std::find(cs.begin(), cs.end(), f), cs.end());
    EXPECT_EQ(common_count(b.chamber_frames[e], b.chamber_frames[f]), 1u);
  }
  EXPECT_ERROR_KIND(apartment_of_opposite(b, 0, 0), ErrorKind::NotOpposite);
}

TEST(Buildings, WriteHq) {
  Building b = build_building(3, 2);
  std::ostringstream out;
  write_hq(out, b.complex, descent_polynomials(3));
  EXPECT_NE(out.str().find("h[{1,2}] = q^3"), std::string::npos) << out.str();
}
