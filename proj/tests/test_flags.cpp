#include "helpers.hpp"
#include "oracles.hpp"
#include "shellax/catalog.hpp"
#include "shellax/flags.hpp"
#include "shellax/shelling.hpp"

#include <numeric>
#include <random>

using namespace shellax;

namespace {

// h from f by expanding sum_j f_j (x-1)^(n-j) and reading off coefficients of x^(n-j).
std::vector<long long> h_by_polynomial(const std::vector<long long>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  std::vector<long long> coeff(n + 1, 0);  // coeff[d] of x^d
  for (int j = 0; j <= n; ++j) {
    int e = n - j;
    for (int i = 0; i <= e; ++i) coeff[i] += f[j] * oracle::choose(e, i) * (((e - i) % 2) ? -1 : 1);
  }
  std::vector<long long> h(n + 1);
  for (int j = 0; j <= n; ++j) h[j] = coeff[n - j];
  return h;
}

long long reduced_euler_oracle(const Complex& cx, int k) {
  long long chi = 0;
  for (const auto& f : oracle::faces(oracle::chamber_sets(cx)))
    if (static_cast<int>(f.size()) <= k) chi += f.size() % 2 ? 1 : -1;
  return chi;
}

}  // namespace

TEST(Flags, HexagonByType) {
  Complex cx = gen_hexagon().cx();
  FlagPair p = flag_vectors(cx);
  ASSERT_TRUE(p.h.labelled);
  EXPECT_EQ(p.f.v, (std::vector<long long>{1, 3, 3, 6}));
  EXPECT_EQ(p.h.v, (std::vector<long long>{1, 2, 2, 1}));
  EXPECT_TRUE(ds_check(cx, p.h).all_passed());
}

TEST(Flags, PetersenIsNotSymmetric) {
  Complex cx = make_entry("petersen").cx();
  FlagPair p = flag_vectors(cx);
  EXPECT_EQ(p.f.v, (std::vector<long long>{1, 10, 15}));
  EXPECT_EQ(p.h.v, (std::vector<long long>{1, 8, 6}));
  EXPECT_FALSE(ds_check(cx, p.h).all_passed());
  EXPECT_ERROR_KIND(flag_vectors(cx, true), ErrorKind::NeedsLabels);
}

TEST(Flags, UnlabelledMatchesPolynomialOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int rank = 1 + static_cast<int>(rng() % 4);
    Complex cx = build_complex(oracle::random_complex(rng, rank, 1 + static_cast<int>(rng() % 12), rank + 5));
    FlagPair p = flag_vectors(cx, false);
    EXPECT_EQ(p.h.v, h_by_polynomial(p.f.v));
  }
}

TEST(Flags, LabelledInversionOnRandomVectors) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 5; ++n) {
    FlagVector h = FlagVector::by_type(n);
    for (auto& x : h.v) x = static_cast<long long>(rng() % 41) - 20;
    FlagVector f = h_to_f(h);
    for (unsigned j = 0; j < f.size(); ++j) {
      long long s = 0;
      for (unsigned k = 0; k < f.size(); ++k)
        if ((k & j) == k) s += h[k];
      EXPECT_EQ(f[j], s);
    }
    EXPECT_EQ(f_to_h(f), h);
  }
}

TEST(Flags, ShellingRestrictionsCountH) {
  std::mt19937_64 rng(8);
  int shellable = 0;
  for (int trial = 0; trial < 300 && shellable < 30; ++trial) {
    int rank = 1 + static_cast<int>(rng() % 3);
    Complex cx = build_complex(oracle::random_complex(rng, rank, 2 + static_cast<int>(rng() % 7), rank + 3));
    ShellingOrder order(cx.num_chambers());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    if (shelling_violation(cx, order)) continue;
    ++shellable;
    ShellingCertificate cert = verify_shelling(cx, order);
    FlagVector counted = FlagVector::by_rank(cx.rank());
    for (ChamberId d = 0; d < cx.num_chambers(); ++d) ++counted[cx.face_rank(cert.restriction[d])];
    EXPECT_EQ(counted, flag_vectors(cx, false).h) << trial;
  }
  EXPECT_GT(shellable, 10);
}

TEST(Flags, BetaFromEveryChamber) {
  for (const auto& name : {"hexagon", "octants:3", "coxeter:A3", "coxeter:B3"}) {
    CatalogEntry e = make_entry(name);
    MetricStructure m = metric_structure(e.cx());
    EXPECT_TRUE(beta_report(e.cx(), m.R, false).all_passed()) << name;
    if (e.cx().labelled()) {
      EXPECT_TRUE(beta_report(e.cx(), m.R, true).all_passed()) << name;
    }
  }
}

TEST(Flags, OctantsLocalVectorsAreBinomial) {
  CatalogEntry e = make_entry("octants:3");
  const Complex& cx = e.cx();
  MetricStructure m = metric_structure(cx);
  LocalFlagTable t = local_flags(cx, m.R, false);
  for (ChamberId d = 0; d < cx.num_chambers(); ++d)
    for (int j = 0; j <= 3; ++j) EXPECT_EQ(t.h[d][j], oracle::choose(3, j));
  EXPECT_TRUE(local_flag_report(cx, t, false).all_passed());
  EXPECT_TRUE(local_ds_check(cx, t).all_passed());
  EXPECT_TRUE(local_bound_check(cx, t).all_passed());
}

TEST(Flags, LocalBoundOnCoxeterComplexes) {
  for (const auto& name : {"hexagon", "coxeter:A3", "coxeter:B3"}) {
    CatalogEntry e = make_entry(name);
    MetricStructure m = metric_structure(e.cx());
    LocalFlagTable t = local_flags(e.cx(), m.R, false);
    EXPECT_TRUE(local_bound_check(e.cx(), t).all_passed()) << name;
    EXPECT_TRUE(local_flag_report(e.cx(), t, false).all_passed()) << name;
  }
}

TEST(Flags, SkeletonSpheresMatchEuler) {
  for (const auto& name : {"octants:3", "coxeter:A3", "ngon:6", "hexagon"}) {
    CatalogEntry e = make_entry(name);
    const Complex& cx = e.cx();
    FlagVector beta = flag_vectors(cx, false).h;
    for (int k = 1; k <= cx.rank(); ++k) {
      long long s = skeleton_spheres(cx, beta, k);
      EXPECT_EQ(k % 2 ? s : -s, reduced_euler_oracle(cx, k)) << name << " k=" << k;
    }
  }
  Complex oct = make_entry("octants:3").cx();
  FlagVector beta = flag_vectors(oct, false).h;
  EXPECT_EQ(skeleton_spheres(oct, beta, 1), 5);
  EXPECT_EQ(skeleton_spheres(oct, beta, 2), 7);
  EXPECT_EQ(skeleton_spheres(oct, beta, 3), 1);
  EXPECT_ERROR_KIND(skeleton_spheres(oct, beta, 0), ErrorKind::Precondition);
}

TEST(Flags, WriteFormats) {
  Complex cx = gen_hexagon().cx();
  std::ostringstream text, tsv;
  FlagVector h = flag_vectors(cx).h;
  write_flag_vector(text, cx, "h", h);
  write_flag_vector(tsv, cx, "h", h, Format::Tsv);
  EXPECT_NE(text.str().find("h[{s,t}] = 1"), std::string::npos) << text.str();
  EXPECT_NE(tsv.str().find("h\t{s}\t2"), std::string::npos) << tsv.str();
}
