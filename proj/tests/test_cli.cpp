#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace treegrp;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(TREEGRP_DATA_DIR) + "/" + name + ".graph"; }

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, WordProblem) {
  const auto t = run({"wp", "--omega", "0(12)", "--word", "adadadad"});
  EXPECT_EQ(t.code, cli::Ok);
  EXPECT_TRUE(contains(t.out, "trivial\n"));
  const auto n = run({"wp", "--word", "adad"});
  // A decided word problem is a computed result either way.
  EXPECT_EQ(n.code, cli::Ok);
  EXPECT_TRUE(contains(n.out, "nontrivial (witness level 3)"));
  const auto bad = run({"wp", "--word", "ae"});
  EXPECT_EQ(bad.code, cli::Usage);
  EXPECT_TRUE(contains(bad.err, "letter 'e'"));
}

TEST(Cli, Order) {
  const auto r = run({"order", "--word", "ab", "--budget", "100000"});
  EXPECT_EQ(r.code, cli::Ok);
  EXPECT_TRUE(contains(r.out, "\n16\n"));
  const auto u = run({"order", "--omega", "(01)", "--word", "ab", "--budget", "1000"});
  EXPECT_EQ(u.code, cli::Undetermined);
  EXPECT_TRUE(contains(u.out, "undetermined"));
  EXPECT_EQ(run({"order", "--context", "gupta-sidki", "--p", "3", "--word", "xy"}).out.find("\n9\n") != std::string::npos, true);
}

TEST(Cli, Growth) {
  const auto g = run({"growth", "--omega", "(012)", "--radius", "4"});
  EXPECT_EQ(g.code, cli::Ok);
  EXPECT_TRUE(contains(g.out, "n,gamma\n0,1\n1,5\n2,11\n3,23\n4,40\n"));
  const auto batch = run({"growth", "--omega", "(012)", "--compare", "(0)", "--radius", "2"});
  EXPECT_TRUE(contains(batch.out, "omega,n,gamma\n(012),0,1\n(012),1,5\n(012),2,11\n(0),0,1\n(0),1,3\n(0),2,5\n"));
  const auto exact = run({"growth", "--omega", "(012)", "--radius", "4", "--no-prefilter"}).out;
  EXPECT_EQ(exact.substr(exact.find("n,gamma")), g.out.substr(g.out.find("n,gamma")));

  const auto path = (std::filesystem::temp_directory_path() / "treegrp_growth_test.csv").string();
  const auto w = run({"growth", "--omega", "(012)", "--radius", "2", "--out", path});
  EXPECT_EQ(w.code, cli::Ok);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "n,gamma\n0,1\n1,5\n2,11\n");
  std::remove(path.c_str());
}

TEST(Cli, OrbitsAndIndex) {
  const auto o = run({"orbits", "--omega", "(012)", "--level", "3"});
  EXPECT_EQ(o.code, cli::Ok);
  EXPECT_TRUE(contains(o.out, "n,orbits,transitive\n1,1,yes\n2,1,yes\n3,1,yes\n"));
  const auto k = run({"orbits", "--subgroup", "b c d", "--level", "2"});
  EXPECT_EQ(k.code, cli::PropertyFailed);
  EXPECT_TRUE(contains(k.out, "1,2,no\n"));
  const auto i = run({"index", "--subgroup", "b ac", "--level", "4"});
  EXPECT_EQ(i.code, cli::Ok);
  EXPECT_TRUE(contains(i.out, "\n2\n"));
  EXPECT_EQ(run({"index", "--subgroup", "b", "--level", "13"}).code, cli::Undetermined);
}

TEST(Cli, SampleTorsionIsDeterministic) {
  const std::vector<std::string> args{"sample-torsion", "--count", "20", "--maxlen", "12", "--seed", "9"};
  const auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, cli::Ok);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(contains(a.out, "# seed: 9 generator: mt19937_64"));
  EXPECT_TRUE(contains(a.out, "word,order\n"));
}

TEST(Cli, Coxeter) {
  const auto check = run({"coxeter", "check", data("path-44")});
  EXPECT_EQ(check.code, cli::PropertyFailed);
  EXPECT_TRUE(contains(check.out, "Excluded(crystallographic-244)"));
  const auto label = run({"coxeter", "check", data("label-3")});
  EXPECT_TRUE(contains(label.out, "label error:"));
  EXPECT_EQ(run({"coxeter", "check", data("xi")}).code, cli::Ok);

  const auto red = run({"coxeter", "reduce", data("path5")});
  EXPECT_EQ(red.code, cli::Ok);
  EXPECT_TRUE(contains(red.out, "move: kill(v5)\nSuccess(Upsilon)\n"));
  const auto square = run({"coxeter", "reduce", data("4-cycle")});
  EXPECT_EQ(square.code, cli::PropertyFailed);
  EXPECT_TRUE(contains(square.out, "Failure: "));
  EXPECT_EQ(run({"coxeter", "reduce", data("single-edge")}).code, cli::PropertyFailed);

  const auto v = run({"coxeter", "verify", data("xi"), "--target", "xi"});
  EXPECT_EQ(v.code, cli::Ok);
  EXPECT_TRUE(contains(v.out, "certificate verified"));
  const auto s = run({"coxeter", "verify", data("4-cycle"), "--target", "phi"});
  EXPECT_TRUE(contains(s.out, "bounded search with L="));
  EXPECT_EQ(run({"coxeter", "check", data("no-such-file")}).code, cli::Usage);
}

TEST(Cli, VerifyAndRelators) {
  const auto d = run({"verify", "--target", "delta"});
  EXPECT_EQ(d.code, cli::Ok);
  EXPECT_TRUE(contains(d.out, "extra (xy^2)^16: verified"));
  const auto d12 = run({"verify", "--target", "delta", "--omega", "0(12)"});
  EXPECT_EQ(d12.code, cli::PropertyFailed);
  EXPECT_TRUE(contains(d12.out, "certificate verified"));
  EXPECT_TRUE(contains(d12.out, "extra (xy^2)^16: failed"));
  EXPECT_EQ(run({"verify", "--target", "upsilon"}).code, cli::PropertyFailed);
  EXPECT_EQ(run({"verify", "--target", "omega"}).code, cli::Usage);

  const auto l = run({"lysenok", "--max-n", "1"});
  EXPECT_EQ(l.code, cli::Ok);
  EXPECT_TRUE(contains(l.out, "(ad)^4,1,16,trivial\n"));
  const auto gs = run({"gupta-sidki", "--p", "3", "--check-relators"});
  EXPECT_EQ(gs.code, cli::Ok);
  EXPECT_TRUE(contains(gs.out, "relators: all verified"));
  EXPECT_EQ(run({"gupta-sidki", "--p", "4"}).code, cli::Usage);
}

TEST(Cli, Stabilizer) {
  const auto s = run({"stabilizer", "--subgroup", "ad acac"});
  EXPECT_EQ(s.code, cli::Ok);
  EXPECT_TRUE(contains(s.out, "acac -> (ca, ac)\n"));
  EXPECT_TRUE(contains(s.out, "adad -> (d, d)\n"));
  EXPECT_EQ(run({"stabilizer", "--context", "gupta-sidki", "--subgroup", "y"}).code, cli::Ok);
}

TEST(Cli, HelpForEverySubcommand) {
  EXPECT_EQ(run({"--help"}).code, cli::Ok);
  for (const char* sub : {"wp", "order", "growth", "orbits", "index", "sample-torsion", "coxeter", "verify", "lysenok",
                          "gupta-sidki", "stabilizer"}) {
    const auto h = run({sub, "--help"});
    EXPECT_EQ(h.code, cli::Ok) << sub;
    EXPECT_FALSE(h.out.empty()) << sub;
  }
  for (const char* sub : {"check", "reduce", "verify"}) EXPECT_EQ(run({"coxeter", sub, "--help"}).code, cli::Ok) << sub;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::Usage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::Usage);
  EXPECT_EQ(run({"wp"}).code, cli::Usage);
  EXPECT_EQ(run({"wp", "--omega", "0()", "--word", "a"}).code, cli::Usage);
  EXPECT_EQ(run({"orbits", "--level", "40"}).code, cli::Usage);
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"growth", "--omega", "0(21)", "--radius", "5"},
           {"coxeter", "reduce", data("triangle-448")},
           {"stabilizer", "--subgroup", "a b c d"},
           {"verify", "--target", "pi"}}) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}
