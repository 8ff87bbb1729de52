#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kslab/cli.hpp"

using namespace kslab;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kslab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const Json& j) const {
    std::ofstream(path(name)) << j.dump();
    return path(name);
  }

  std::string gen(const std::string& name, const std::vector<std::string>& args) {
    std::vector<std::string> full{"gen"};
    full.insert(full.end(), args.begin(), args.end());
    full.push_back("--out");
    full.push_back(path(name));
    const CliRun r = run(full);
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  // Runs a command, checks exit 0 and that verify accepts the report.
  Json report(std::vector<std::string> args) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    const VerifyOutcome v = verify_report(j);
    std::string why;
    for (const auto& s : v.reasons) why += s + "; ";
    EXPECT_TRUE(v.ok) << args.front() << ": " << why;
    return j;
  }

  fs::path dir_;
};

Json matrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return matrix_to_json(m, Field::real);
}

}  // namespace

TEST_F(Cli, GenThenAnalyze) {
  const std::string f = gen("h.json", {"--harmonic", "n=2", "M=4"});
  const Json j = report({"analyze", "--input", f});
  EXPECT_NEAR(j["result"]["lower_frame_bound"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["result"]["upper_frame_bound"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(j["config"]["seed"], 0);
  EXPECT_EQ(j["meta"]["version"], kVersion);
}

TEST_F(Cli, PaveSwap) {
  const std::string f = write("swap.json", matrix({{0, 1}, {1, 0}}));
  const Json j = report({"pave", "--input", f, "--r-max", "2", "--epsilon", "0.5"});
  EXPECT_TRUE(j["result"]["verdict"].get<bool>());
  EXPECT_EQ(j["result"]["achieved"].get<double>(), 0.0);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"analyze"}).code, 2);  // missing --input
  EXPECT_EQ(run({"pave", "--r-max", "two"}).code, 2);
  const std::string big = gen("u.json", {"--random-unit", "n=4", "M=30"});
  EXPECT_EQ(run({"ric", "--input", big, "--S", "5", "--budget", "100"}).code, 3);
}

TEST_F(Cli, MalformedJsonNamesPointer) {
  Json bad = matrix({{0, 1}, {1, 0}});
  bad["entries"][2] = "oops";
  const CliRun r = run({"pave", "--input", write("bad.json", bad)});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/entries/2"), std::string::npos) << r.err;
  std::ofstream(path("broken.json")) << "{\"type\": ";
  const CliRun p = run({"analyze", "--input", path("broken.json")});
  EXPECT_EQ(p.code, 2);
}

TEST_F(Cli, DeterministicPayload) {
  const std::string f = gen("r.json", {"--random-unit", "n=3", "M=7", "--seed", "5"});
  const std::string g = gen("r2.json", {"--random-unit", "n=3", "M=7", "--seed", "5"});
  std::ifstream a(f), b(g);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(a), {}), std::string(std::istreambuf_iterator<char>(b), {}));
  const std::vector<std::string> args{"pave", "--input", write("m.json", matrix({{0, 1, 2, 0}, {1, 0, 1, 3}, {2, 1, 0, 1}, {0, 3, 1, 0}})),
                                      "--r-max", "2", "--mode", "local", "--seed", "9"};
  const CliRun x = run(args), y = run(args);
  EXPECT_EQ(report_payload(Json::parse(x.out)).dump(), report_payload(Json::parse(y.out)).dump());
  const CliRun t1 = run({"decompose", "--input", f, "--mode", "tp1", "--S", "2", "--delta", "0.6", "--seed", "3"});
  const CliRun t2 = run({"decompose", "--input", f, "--mode", "tp1", "--S", "2", "--delta", "0.6", "--seed", "3"});
  EXPECT_EQ(report_payload(Json::parse(t1.out)).dump(), report_payload(Json::parse(t2.out)).dump());
}

TEST_F(Cli, EveryCommandVerifies) {
  const std::string harm = gen("h.json", {"--harmonic", "n=2", "M=6"});
  const std::string unit = gen("u.json", {"--random-unit", "n=3", "M=8", "--seed", "2"});
  const std::string real = gen("r.json", {"--random-unit", "n=2", "M=3", "field=real", "--seed", "4"});
  const std::string proj = gen("p.json", {"--projection", "M=6", "n=3", "--seed", "1"});
  const std::string herm = gen("H.json", {"--hermitian", "n=5", "--seed", "1"});
  const std::string onb = gen("o.json", {"--orthonormal", "n=3"});
  const std::string trig = gen("t.json", {"--trig", "N=72", "degree=10", "--seed", "3"});

  Json parseval = Json::parse(std::ifstream(harm));
  const Frame h = frame_from_json(parseval);
  Frame hp = h;
  hp.synthesis /= std::sqrt(3.0);
  const std::string hpar = write("hp.json", frame_to_json(hp));

  report({"analyze", "--input", unit});
  report({"dilate", "--input", hpar});
  const Json unitary = Json::parse(std::ifstream(gen("U.json", {"--unitary", "n=3", "--seed", "2"})));
  report({"dilate", "--input", write("Ut.json", unitary)});
  report({"pave", "--input", herm, "--r-max", "2", "--epsilon", "0.5"});
  report({"pave", "--input", herm, "--r-max", "2", "--mode", "local", "--seed", "1"});
  report({"pave", "--input", proj, "--r-max", "2", "--mode", "projection", "--delta", "0.9"});
  report({"weaver", "--input", harm, "--r-max", "2", "--epsilon", "0.5"});
  report({"decompose", "--input", onb, "--epsilon", "0.1"});
  report({"decompose", "--input", harm, "--mode", "feichtinger", "--bound", "0.5", "--r-max", "4"});
  report({"decompose", "--input", unit, "--mode", "tp1", "--S", "2", "--delta", "0.6", "--seed", "7"});
  report({"ric", "--input", unit, "--S", "2"});
  report({"ric", "--input", unit, "--S", "2", "--samples", "20", "--seed", "3"});
  report({"radohorn", "--input", hpar, "--r-max", "3"});
  report({"radohorn", "--input", harm, "--r-max", "2"});  // infeasible: violator reported
  report({"subspace", "--input", proj, "--bound", "0.3", "--blocks", "0,1,2;3,4,5"});
  report({"toeplitz", "--input", trig, "--k-list", "2,3,4,6"});
  report({"toeplitz", "--levels", "4", "--grid", "120", "--k-list", "2,3", "--max-freq", "10", "--epsilon", "0.5"});
  report({"kadec", "--A", "1", "--B", "1", "--delta", "0.1"});
  report({"kadec", "--A", "1", "--B", "1", "--delta", "0.2", "--grid", "8", "--seed", "4"});
  report({"mv-theta", "--count", "4", "--delta", "0.5", "--T", "2", "--seed", "1"});
  report({"erasure", "--input", hpar, "--K", "2", "--count", "4"});
  report({"erasure", "--input", hpar, "--mode", "cc", "--epsilon", "0.1"});
  report({"erasure", "--input", hpar, "--mode", "ccc", "--r-max", "3", "--epsilon", "0.3"});
  report({"phase", "--input", real, "--seed", "2", "--trials", "200"});
}

TEST_F(Cli, VerifyCommandAndCorruption) {
  const std::string unit = gen("u.json", {"--random-unit", "n=3", "M=8", "--seed", "2"});
  const CliRun r = run({"decompose", "--input", unit, "--mode", "tp1", "--S", "2", "--delta", "0.6", "--out", path("tp1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const CliRun v = run({"verify", "--input", path("tp1.json")});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(Json::parse(v.out)["verified"].get<bool>());

  Json rep = read_json_file(path("tp1.json"));
  // tampered partition: merge every block into one
  Json tampered = rep;
  Json all = Json::array();
  for (int i = 0; i < 8; ++i) all.push_back(i);
  tampered["result"]["partition"]["blocks"] = Json::array({all});
  EXPECT_FALSE(verify_report(tampered).ok);
  const CliRun tv = run({"verify", "--input", write("t.json", tampered)});
  EXPECT_EQ(tv.code, 0);
  EXPECT_FALSE(Json::parse(tv.out)["verified"].get<bool>());

  Json noseed = rep;
  noseed["config"].erase("seed");
  const VerifyOutcome ns = verify_report(noseed);
  EXPECT_FALSE(ns.ok);
  ASSERT_FALSE(ns.reasons.empty());
  EXPECT_NE(ns.reasons.front().find("seed"), std::string::npos);

  Json noinput = rep;
  noinput.erase("input");
  EXPECT_FALSE(verify_report(noinput).ok);

  EXPECT_FALSE(verify_report(Json::object()).ok);
}

TEST_F(Cli, TamperedPaveAndResult) {
  const std::string f = write("m.json", matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  const Json j = report({"pave", "--input", f, "--r-max", "3", "--epsilon", "0.5"});
  Json bad = j;
  bad["result"]["partition"]["blocks"] = Json::array({Json::array({0, 1}), Json::array({2})});
  EXPECT_FALSE(verify_report(bad).ok);
  Json lie = j;
  lie["result"]["achieved"] = 0.25;
  EXPECT_FALSE(verify_report(lie).ok);
  const Json a = report({"analyze", "--input", gen("h.json", {"--harmonic", "n=2", "M=4"})});
  Json alie = a;
  alie["result"]["upper_frame_bound"] = 3.0;
  EXPECT_FALSE(verify_report(alie).ok);
}

TEST_F(Cli, BinaryRunsAndExitCodes) {
  const std::string exe = KSLAB_CLI_PATH;
  EXPECT_EQ(std::system((exe + " --help > /dev/null").c_str()), 0);
  const int bad = std::system((exe + " frobnicate > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(bad), 2);
  const std::string f = gen("h.json", {"--harmonic", "n=2", "M=4"});
  EXPECT_EQ(std::system((exe + " analyze --input " + f + " --out " + path("a.json")).c_str()), 0);
  EXPECT_TRUE(verify_report(read_json_file(path("a.json"))).ok);
}
