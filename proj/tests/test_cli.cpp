#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "agler/cli.hpp"
#include "agler/demos.hpp"
#include "agler/json_io.hpp"

using namespace agler;
using json_io::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("agler_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const json& j) const {
    json_io::write_file(path(name), j);
    return path(name);
  }
  std::string write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  // Writes the trivar bundle and returns {p, q, cert}.
  std::vector<std::string> trivar_files() const {
    const auto d = demo_trivar();
    return {write("p.json", json_io::to_json(d.p)), write("q.json", json_io::to_json(d.q)),
            write("cert.json", json_io::to_json(*d.certificate))};
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, VerifyTrivarPasses) {
  const auto f = trivar_files();
  for (bool exact : {false, true}) {
    std::vector<std::string> args = {"verify", "--p", f[0], "--q", f[1], "--cert", f[2], "--json"};
    if (exact) args.push_back("--exact");
    const auto r = run(args);
    EXPECT_EQ(r.code, cli::kPass) << r.out << r.err;
    EXPECT_TRUE(r.j()["pass"].get<bool>());
  }
}

TEST_F(Cli, VerifyRejectsCorruptedCertificate) {
  const auto f = trivar_files();
  const auto bad = write("bad.json", json_io::to_json(trivar_certificate({1, 2})));
  const auto r = run({"verify", "--p", f[0], "--q", f[1], "--cert", bad, "--exact"});
  EXPECT_EQ(r.code, cli::kFail) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, MalformedInputIsAUsageError) {
  const auto f = trivar_files();
  const auto junk = write_text("junk.json", "{\"nvars\": 3, \"terms\": [");
  EXPECT_EQ(run({"verify", "--p", junk, "--q", f[1], "--cert", f[2]}).code, cli::kUsage);
  const auto dup = write_text("dup.json", R"({"nvars": 3, "terms": [{"exp": [0,0,0], "re": 1},
                                                                   {"exp": [0,0,0], "re": 2}]})");
  EXPECT_EQ(run({"verify", "--p", dup, "--q", f[1], "--cert", f[2]}).code, cli::kUsage);
  EXPECT_EQ(run({"verify", "--p", path("missing.json"), "--q", f[1], "--cert", f[2]}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"demo", "nosuchdemo"}).code, cli::kUsage);
  EXPECT_EQ(run({"eval", "--demo", "blaschke", "--point", "1+"}).code, cli::kUsage);
}

TEST_F(Cli, RealizeTrivarGivesSizeNine) {
  const auto f = trivar_files();
  const auto out = path("real.json");
  const auto r = run({"realize", "--p", f[0], "--q", f[1], "--cert", f[2], "--out", out, "--json"});
  ASSERT_EQ(r.code, cli::kPass) << r.out << r.err;
  const json j = r.j();
  EXPECT_EQ(j["dims"], json::array({3, 3, 3}));
  EXPECT_LT(j["match_residual"].get<double>(), 1e-8);
  EXPECT_EQ(json_io::realization_from_json(json_io::read_file(out)).size(), 9u);
}

TEST_F(Cli, RealizeCoordinateGivesSizeOne) {
  const auto r = run({"realize", "--demo", "coordinate", "--json"});
  ASSERT_EQ(r.code, cli::kPass) << r.out;
  EXPECT_EQ(r.j()["dims"], json::array({1}));
}

TEST_F(Cli, RealizeRejectsInvalidCertificate) {
  const auto f = trivar_files();
  const auto bad = write("bad.json", json_io::to_json(trivar_certificate({1, 2})));
  const auto r = run({"realize", "--p", f[0], "--q", f[1], "--cert", bad});
  EXPECT_EQ(r.code, cli::kFail);
  EXPECT_NE((r.out + r.err).find("not isometric"), std::string::npos) << r.out << r.err;
}

TEST_F(Cli, EvalMatchesWrittenRealizationExactly) {
  const auto f = trivar_files();
  const auto out = path("real.json");
  ASSERT_EQ(run({"realize", "--p", f[0], "--q", f[1], "--cert", f[2], "--out", out}).code, cli::kPass);
  const std::string pt = "0.3+0.1i,-0.2,0.5i";
  const auto r = run({"eval", "--realization", out, "--point", pt, "--json"});
  ASSERT_EQ(r.code, cli::kPass) << r.err;
  const Realization real = json_io::realization_from_json(json_io::read_file(out));
  const Complex want = transfer_eval(real, cli::parse_point(pt));
  EXPECT_EQ(r.j()["re"].get<double>(), want.real());
  EXPECT_EQ(r.j()["im"].get<double>(), want.imag());
}

TEST_F(Cli, EvalAtPoleIsADomainFailure) {
  EXPECT_EQ(run({"eval", "--demo", "blaschke", "--point", "2"}).code, cli::kFail);
  EXPECT_EQ(run({"eval", "--demo", "blaschke", "--point", "0.1,0.1"}).code, cli::kUsage);
}

TEST_F(Cli, ToRationalOfBlaschke) {
  const auto r = run({"to-rational", "--demo", "blaschke", "--exact", "--json"});
  ASSERT_EQ(r.code, cli::kPass) << r.out << r.err;
  const json j = r.j();
  EXPECT_EQ(json_io::poly_from_json<Surd>(j["p"]), demo_blaschke().p);
  EXPECT_EQ(json_io::poly_from_json<Surd>(j["q"]), demo_blaschke().q);
}

TEST_F(Cli, LowerBounds) {
  const auto r = run({"lower-bound", "--demo", "trivar", "--starts", "200", "--json"});
  ASSERT_EQ(r.code, cli::kPass) << r.out;
  EXPECT_EQ(r.j()["bound"].get<int>(), 6);

  const auto one = write_text("one.json", R"({"nvars": 3, "terms": [{"exp": [0,0,0], "re": 1}]})");
  const auto mono = write_text("mono.json", R"({"nvars": 3, "terms": [{"exp": [1,1,1], "re": 1}]})");
  const auto m = run({"lower-bound", "--p", one, "--q", mono, "--json"});
  ASSERT_EQ(m.code, cli::kPass) << m.out << m.err;
  EXPECT_EQ(m.j()["bound"].get<int>(), 3);

  const auto sq = write_text("sq.json", R"({"nvars": 3, "terms": [{"exp": [2,0,0], "re": 1}]})");
  EXPECT_EQ(run({"lower-bound", "--p", one, "--q", sq}).code, cli::kFail);
}

TEST_F(Cli, VnTest) {
  const auto ok = run({"vn-test", "--demo", "trivar", "--trials", "50", "--json"});
  ASSERT_EQ(ok.code, cli::kPass) << ok.out;
  EXPECT_LE(ok.j()["max_norm"].get<double>(), 1.0);

  const auto one = write_text("one.json", R"({"nvars": 2, "terms": [{"exp": [0,0], "re": 1}]})");
  const auto two = write_text("two.json", R"({"nvars": 2, "terms": [{"exp": [0,0], "re": 2}]})");
  const auto bad = run({"vn-test", "--p", one, "--q", two, "--trials", "5", "--json"});
  EXPECT_EQ(bad.code, cli::kFail);
  EXPECT_FALSE(bad.j()["pass"].get<bool>());
}

TEST_F(Cli, DemosPassExceptPrintedTwoVariableMatrix) {
  for (const char* name : {"blaschke", "trivar", "coordinate"}) {
    const auto r = run({"demo", name, "--starts", "200"});
    EXPECT_EQ(r.code, cli::kPass) << name << "\n" << r.out << r.err;
  }
  // The printed two-variable matrix realizes -q/p; the demo reports that.
  const auto r = run({"demo", "twovar", "--starts", "200"});
  EXPECT_EQ(r.code, cli::kFail);
  EXPECT_NE(r.out.find("-q/p"), std::string::npos) << r.out;
}

TEST_F(Cli, DemoWritesFilesThatVerify) {
  const auto dir = path("bundle");
  // Exact files carry the surd entries; plain ones are rounded doubles.
  ASSERT_EQ(run({"demo", "blaschke", "--exact", "--write-dir", dir}).code, cli::kPass);
  const auto p = dir + "/p.json", q = dir + "/q.json", cert = dir + "/cert.json";
  EXPECT_EQ(run({"verify", "--p", p, "--q", q, "--cert", cert, "--exact"}).code, cli::kPass);
  EXPECT_EQ(run({"to-rational", "--realization", dir + "/realization.json", "--exact"}).code, cli::kPass);

  const auto fdir = path("float");
  ASSERT_EQ(run({"demo", "blaschke", "--write-dir", fdir}).code, cli::kPass);
  EXPECT_EQ(run({"verify", "--p", fdir + "/p.json", "--q", fdir + "/q.json", "--cert", fdir + "/cert.json"}).code,
            cli::kPass);
}
