// Drives the svc binary end to end through files.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("svc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Result run(const std::string& args) const {
    std::string err_file = path("stderr.txt").string();
    std::string cmd = std::string(SVC_CLI_PATH) + " " + args + " 2>" + err_file;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = ::pclose(pipe);
    return {WEXITSTATUS(status), out, read("stderr.txt")};
  }

  fs::path dir_;
};

TEST_F(Cli, CondenseSixZeroBytes) {
  write("in.bin", std::string(6, '\0'));
  Result r = run("condense --d 2 --in " + path("in.bin").string() + " --out " + path("out.bin").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(read("out.bin"), std::string(4, '\0'));
  EXPECT_NE(r.err.find("dropped: 0"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("blocks: 16"), std::string::npos) << r.err;
}

TEST_F(Cli, CondenseEmptyInput) {
  write("in.bin", "");
  Result r = run("condense --d 3 --in " + path("in.bin").string() + " --out " + path("out.bin").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(read("out.bin").empty());
}

TEST_F(Cli, CondenseViaPipes) {
  write("in.bin", std::string(6, '\0'));
  Result r = run("condense --d 2 < " + path("in.bin").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, std::string(4, '\0'));
}

TEST_F(Cli, CondenseRejectsBadParameter) {
  write("in.bin", "x");
  EXPECT_EQ(run("condense --d 9 --in " + path("in.bin").string()).code, 2);
  EXPECT_EQ(run("condense --d 1 --in " + path("in.bin").string()).code, 2);
  EXPECT_EQ(run("condense --d 2 --in " + path("missing.bin").string()).code, 2);
}

TEST_F(Cli, AnalyzeCondensedIid) {
  ASSERT_EQ(run("gen-source --kind iid --n 3 --p1 0.75 --out " + path("d.json").string()).code, 0);
  Result r = run("analyze --dist " + path("d.json").string() + " --delta 0.5 --condenser 2");
  EXPECT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["version"], "report_v1");
  EXPECT_NEAR(j["min_entropy"].get<double>(), 1.1926450779423958, 1e-9);
  EXPECT_EQ(j["map"], "f_d(d=2,k=1)");
}

TEST_F(Cli, AnalyzeWithTableAndSeeds) {
  ASSERT_EQ(run("gen-source --kind potential --n 6 --delta 0.5 --seed 4 --out " + path("d.json").string()).code, 0);
  Result r = run("analyze --dist " + path("d.json").string() + " --delta 0.5 --condenser 2 --D 4");
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["extractor"]["D"], 4);
  EXPECT_EQ(j["source"]["is_strong_sv"], true);

  write("t.json", R"({"n": 3, "m": 2, "table": [0, 3, 2, 1, 1, 2, 3, 0]})");
  ASSERT_EQ(run("gen-source --kind iid --n 3 --p1 0.75 --out " + path("i.json").string()).code, 0);
  Result t = run("analyze --dist " + path("i.json").string() + " --delta 0.5 --condenser " + path("t.json").string());
  EXPECT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(Json::parse(t.out)["map"], "table");
}

TEST_F(Cli, AnalyzeUniformPasses) {
  write("u.json", R"({"n": 2, "probs": [0.25, 0.25, 0.25, 0.25]})");
  Result r = run("analyze --dist " + path("u.json").string() + " --delta 0.2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["passed"], true);
}

TEST_F(Cli, AnalyzeNonSVExitsOne) {
  write("d.json", R"({"n": 2, "probs": [0.7, 0.1, 0.1, 0.1]})");
  Result r = run("analyze --dist " + path("d.json").string() + " --delta 0.1");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["source"]["is_sv"], false);
}

TEST_F(Cli, AnalyzeMalformedFileExitsTwoWithPosition) {
  write("d.json", R"({"n": 2, "probs": [0.7, 0.1,)");
  Result r = run("analyze --dist " + path("d.json").string() + " --delta 0.1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;

  write("e.json", R"({"n": 2, "probs": [0.7, 0.1, "x", 0.1]})");
  Result e = run("analyze --dist " + path("e.json").string() + " --delta 0.1");
  EXPECT_EQ(e.code, 2);
  EXPECT_NE(e.err.find("/probs/2"), std::string::npos) << e.err;
}

TEST_F(Cli, AnalyzeSeedsNeedCondenser) {
  write("u.json", R"({"n": 2, "probs": [0.25, 0.25, 0.25, 0.25]})");
  EXPECT_EQ(run("analyze --dist " + path("u.json").string() + " --delta 0.2 --D 2").code, 2);
}

TEST_F(Cli, AttackExamples) {
  write("xor.json", R"({"n": 2, "m": 1, "table": [0, 1, 1, 0]})");
  Result r = run("attack --function " + path("xor.json").string() + " --delta 0.5");
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["version"], "attack_v1");
  EXPECT_NEAR(j["achieved_min_entropy"].get<double>(), 0.41503749927884376, 1e-9);

  write("id.json", R"({"n": 3, "m": 3, "table": [0, 1, 2, 3, 4, 5, 6, 7]})");
  Json id = Json::parse(run("attack --function " + path("id.json").string() + " --delta 0.5").out);
  EXPECT_NEAR(id["achieved_min_entropy"].get<double>(), id["theorem_bound"].get<double>(), 1e-9);

  write("c.json", R"({"n": 2, "m": 1, "table": [1, 1, 1, 1]})");
  Json c = Json::parse(run("attack --function " + path("c.json").string() + " --delta 0.5").out);
  EXPECT_EQ(c["achieved_min_entropy"].get<double>(), 0.0);

  write("bad.json", R"({"n": 2, "m": 1, "table": [1, 1, 1]})");
  EXPECT_EQ(run("attack --function " + path("bad.json").string() + " --delta 0.5").code, 2);
}

TEST_F(Cli, AttackAdversaryFeedsGenSource) {
  write("xor.json", R"({"n": 2, "m": 1, "table": [0, 1, 1, 0]})");
  Result a = run("attack --function " + path("xor.json").string() + " --delta 0.5");
  write("attack.json", a.out);
  ASSERT_EQ(run("gen-source --kind adversary --adversary " + path("attack.json").string() + " --out " +
                path("d.json").string())
                .code,
            0);
  Json d = Json::parse(read("d.json"));
  EXPECT_NEAR(d["probs"][0].get<double>() + d["probs"][3].get<double>(), 0.75, 1e-12);
}

TEST_F(Cli, GenSourceValidatesFlags) {
  EXPECT_EQ(run("gen-source --kind iid --n 3").code, 2);
  EXPECT_EQ(run("gen-source --kind potential --n 3").code, 2);
  EXPECT_EQ(run("gen-source --kind bogus --n 3").code, 2);
}

TEST_F(Cli, CommandsAreDeterministic) {
  std::string a = run("gen-source --kind potential --n 5 --delta 0.3 --seed 9").out;
  std::string b = run("gen-source --kind potential --n 5 --delta 0.3 --seed 9").out;
  EXPECT_EQ(a, b);
  EXPECT_NE(a, run("gen-source --kind potential --n 5 --delta 0.3 --seed 10").out);
  Json first = Json::parse(run("verify --suite theorem1 --seed 3 --json").out);
  Json second = Json::parse(run("verify --suite theorem1 --seed 3 --json").out);
  EXPECT_EQ(first, second);
}

TEST_F(Cli, VerifySuites) {
  Result p = run("verify --suite partition");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("PASS partition"), std::string::npos);
  Result l = run("verify --suite lemma-e1 --max-n 4 --json");
  EXPECT_EQ(l.code, 0);
  Json j = Json::parse(l.out);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["results"].size(), 3u);
  EXPECT_EQ(run("verify --suite cond-extr").code, 0);
  EXPECT_EQ(run("verify --suite nonsense").code, 2);
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST_F(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run("").code, 2); }

}  // namespace
