#include "shellax/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <sys/wait.h>

namespace {

struct Outcome {
  int rc;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "shellax");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int rc = shellax::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(SHELLAX_SAMPLES) + "/" + name; }

bool has_line(const std::string& text, const std::string& line) { return ("\n" + text).find("\n" + line + "\n") != std::string::npos; }

}  // namespace

TEST(Cli, CatalogLists) {
  Outcome r = run({"catalog"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_TRUE(has_line(r.out, "@hexagon")) << r.out;
  EXPECT_TRUE(has_line(r.out, "@building:3:2")) << r.out;
}

TEST(Cli, AxiomsOnHexagon) {
  Outcome r = run({"check-axioms", "@hexagon", "--structure", "metric", "--opposite"});
  EXPECT_EQ(r.rc, 0) << r.out << r.err;
  EXPECT_TRUE(has_line(r.out, "CHECK P4 PASS"));
  EXPECT_TRUE(has_line(r.out, "CHECK S2 PASS"));
}

TEST(Cli, SampleFiles) {
  EXPECT_EQ(run({"check-axioms", sample("square.cplx"), "--structure", sample("square-clockwise.struct")}).rc, 0);
  EXPECT_EQ(run({"shell", sample("hexagon.cplx"), "--order", sample("hexagon-clockwise.order")}).rc, 0);
  Outcome broken = run({"shell", sample("hexagon.cplx"), "--order", sample("hexagon-broken.order")});
  EXPECT_EQ(broken.rc, 1);
  EXPECT_NE(broken.out.find("CHECK SHELL FAIL"), std::string::npos) << broken.out;
  Outcome cyc = run({"check-axioms", sample("hexagon.cplx"), "--structure", sample("cyclic.struct")});
  EXPECT_EQ(cyc.rc, 1);
  EXPECT_NE(cyc.out.find("cycle e1 < e2 < e1"), std::string::npos) << cyc.out;
  Outcome bow = run({"check-axioms", sample("bowtie.cplx")});
  EXPECT_EQ(bow.rc, 1);
  EXPECT_NE(bow.out.find("CHECK GATE.unique FAIL"), std::string::npos);
  Outcome w = run({"walk", sample("hexagon.cplx"), "--weights", sample("hexagon-skewed.weights")});
  EXPECT_EQ(w.rc, 0) << w.err;
  EXPECT_TRUE(has_line(w.out, "pi 0,1 = 395/644")) << w.out;
  EXPECT_EQ(run({"arrangement", sample("generic4.arr"), "--check", "rank3"}).rc, 0);
}

TEST(Cli, ExpectFailSwaps) {
  EXPECT_EQ(run({"--expect-fail", "shell", sample("hexagon.cplx"), "--order", sample("hexagon-broken.order")}).rc, 0);
  EXPECT_EQ(run({"--expect-fail", "hvector", "@hexagon"}).rc, 1);
  EXPECT_EQ(run({"--expect-fail", "building", "--n", "3", "--q", "4", "--check", "counts"}).rc, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).rc, 2);
  EXPECT_EQ(run({"shell"}).rc, 2);
  EXPECT_EQ(run({"hvector", "/nonexistent/file"}).rc, 2);
  EXPECT_EQ(run({"catalog", "@nosuch"}).rc, 2);
  EXPECT_EQ(run({"catalog", "@ngon:2"}).rc, 2);
  Outcome q4 = run({"building", "--n", "3", "--q", "4", "--check", "counts"});
  EXPECT_EQ(q4.rc, 2);
  EXPECT_NE(q4.err.find("NonPrimeField"), std::string::npos) << q4.err;
  EXPECT_EQ(run({"check-axioms", "@generic4"}).rc, 2);
  // no gates, so no default order to reverse
  EXPECT_EQ(run({"shell", "@petersen", "--reverse"}).rc, 1);
}

TEST(Cli, HvectorOutput) {
  Outcome r = run({"hvector", "@hexagon"});
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_TRUE(has_line(r.out, "h[{s}] = 2")) << r.out;
  Outcome tsv = run({"--format", "tsv", "hvector", "@hexagon"});
  EXPECT_TRUE(has_line(tsv.out, "h\t{s}\t2")) << tsv.out;
  Outcome pet = run({"hvector", "@petersen"});
  EXPECT_EQ(pet.rc, 1);
}

TEST(Cli, SampledRunsAreDeterministic) {
  std::vector<std::string> args{"--cap", "3", "--seed", "7", "check-axioms", "@coxeter:A3", "--mode", "sampled"};
  Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.rc, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("INFO S2.mode sampled"), std::string::npos) << a.out;
}

TEST(Cli, BuildingDuality) {
  Outcome r = run({"building", "--n", "3", "--q", "2", "--check", "duality"});
  EXPECT_EQ(r.rc, 0) << r.out;
  EXPECT_TRUE(has_line(r.out, "h[{1,2}] = q^3")) << r.out;
}

TEST(Cli, CatalogSelfChecks) {
  for (const char* name : {"@hexagon", "@ngon:6", "@petersen", "@coxeter:A2", "@generic4"}) {
    Outcome r = run({"catalog", name, "--check"});
    EXPECT_EQ(r.rc, 0) << name << "\n" << r.out << r.err;
  }
}

TEST(Cli, ProcessExitCodes) {
  auto status = [](const std::string& args) {
    std::string cmd = std::string(SHELLAX_BIN) + " " + args + " >/dev/null 2>&1";
    int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("catalog"), 0);
  EXPECT_EQ(status("hvector @petersen"), 1);
  EXPECT_EQ(status("--bogus"), 2);
}
