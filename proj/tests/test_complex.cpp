#include "helpers.hpp"
#include "oracles.hpp"
#include "shellax/catalog.hpp"

#include <random>

using namespace shellax;

TEST(Complex, HexagonBasics) {
  Complex cx = gen_hexagon().cx();
  EXPECT_EQ(cx.rank(), 2);
  EXPECT_EQ(cx.num_chambers(), 6);
  EXPECT_EQ(cx.num_faces(), 13);
  EXPECT_TRUE(cx.labelled());
  EXPECT_EQ(cx.dist(cx.parse_chamber("e0"), cx.parse_chamber("e3")), 3);
  EXPECT_EQ(cx.parse_chamber("0,1"), cx.parse_chamber("e0"));
  EXPECT_TRUE(is_thin(cx).thin);
}

TEST(Complex, WriteParseRoundTrip) {
  for (const auto& name : {"hexagon", "petersen", "ngon:5", "coxeter:A3"}) {
    Complex cx = make_entry(name).cx();
    std::ostringstream out;
    write_complex(out, cx);
    Complex back = complex_from(out.str());
    std::ostringstream again;
    write_complex(again, back);
    EXPECT_EQ(out.str(), again.str()) << name;
    EXPECT_EQ(back.num_faces(), cx.num_faces());
  }
}

TEST(Complex, InputErrors) {
  EXPECT_ERROR_KIND(complex_from(""), ErrorKind::EmptyInput);
  EXPECT_ERROR_KIND(complex_from("vertex a\nvertex b\nvertex c\nchamber a b\nchamber c\n"), ErrorKind::NotPure);
  EXPECT_ERROR_KIND(complex_from("vertex a s\nvertex b s\nchamber a b\n"), ErrorKind::BadLabelling);
  EXPECT_ERROR_KIND(complex_from("vertex a s\nvertex b\nchamber a b\n"), ErrorKind::BadLabelling);
  EXPECT_ERROR_KIND(complex_from("vertex a\nchamber a x\n"), ErrorKind::ParseError);
  EXPECT_ERROR_KIND(complex_from("vertex a\nvertex b\nchamber a b\nchamber b a\n"), ErrorKind::ParseError);
  EXPECT_ERROR_KIND(complex_from("edge a b\n"), ErrorKind::ParseError);
  Complex cx = gen_hexagon().cx();
  EXPECT_ERROR_KIND(cx.parse_face("0,3"), ErrorKind::NotAFace);
  EXPECT_ERROR_KIND(cx.parse_chamber("0"), ErrorKind::NotAFace);
}

TEST(Complex, DisconnectedDistance) {
  Complex cx = complex_from("vertex a\nvertex b\nvertex c\nvertex d\nchamber a b\nchamber c d\n");
  EXPECT_FALSE(cx.connected());
  EXPECT_ERROR_KIND(gallery_distance(cx, 0, 1), ErrorKind::Disconnected);
  EXPECT_ERROR_KIND(check_gate_property(cx), ErrorKind::Disconnected);
}

TEST(Complex, RandomDistancesMatchBfs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int rank = 1 + static_cast<int>(rng() % 4);
    Complex cx = build_complex(oracle::random_complex(rng, rank, 3 + static_cast<int>(rng() % 14), rank + 6));
    auto ch = oracle::chamber_sets(cx);
    auto d = oracle::distances(ch);
    for (int a = 0; a < cx.num_chambers(); ++a)
      for (int b = 0; b < cx.num_chambers(); ++b) ASSERT_EQ(cx.dist(a, b), d[a][b]) << "trial " << trial;
    EXPECT_EQ(static_cast<std::size_t>(cx.num_faces()), oracle::faces(ch).size());
  }
}

TEST(Complex, RandomGatesMatchNearest) {
  std::mt19937_64 rng(11);
  int holds = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int rank = 2 + static_cast<int>(rng() % 2);
    Complex cx = build_complex(oracle::random_complex(rng, rank, 3 + static_cast<int>(rng() % 8), rank + 4));
    auto ch = oracle::chamber_sets(cx);
    auto d = oracle::distances(ch);
    GateResult g = check_gate_property(cx);
    bool unique_everywhere = true;
    for (FaceId f = 0; f < cx.num_faces(); ++f)
      for (ChamberId c = 0; c < cx.num_chambers(); ++c) {
        auto near = oracle::nearest(ch, d, cx.face_vertices(f), c);
        if (near.size() == 1) {
          if (g.at(cx, f, c) >= 0) {
            EXPECT_EQ(g.at(cx, f, c), near.front());
          }
        } else {
          unique_everywhere = false;
          EXPECT_EQ(g.at(cx, f, c), -1);
        }
      }
    if (!unique_everywhere) EXPECT_FALSE(g.holds);
    holds += g.holds;
  }
  EXPECT_GT(holds, 0);
}

TEST(Complex, GeodesicsOnHexagon) {
  Complex cx = gen_hexagon().cx();
  auto all = enumerate_geodesics(cx, 0, 3);
  EXPECT_EQ(all.galleries.size(), 2u);
  auto one = geodesic(cx, 0, 3);
  EXPECT_EQ(one.size(), 4u);
  EXPECT_EQ(geodesic_interval(cx, 0, 2).count(), 3u);
  EXPECT_TRUE(check_residue_convexity(cx).all_passed());
}

TEST(Complex, ThinWitness) {
  Complex cx = make_entry("petersen").cx();
  auto t = is_thin(cx);
  EXPECT_FALSE(t.thin);
  ASSERT_TRUE(t.witness);
  EXPECT_EQ(cx.residue(*t.witness).size(), 3u);
}
