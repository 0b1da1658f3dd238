#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "shatter/cli.hpp"
#include "shatter/io.hpp"
#include "test_support.hpp"

using namespace shatter;
using namespace testing_support;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "shatter");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("shatter_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& content) {
        auto p = dir_ / name;
        std::ofstream(p) << content;
        return p.string();
    }

    std::filesystem::path dir_;
};

} // namespace

TEST_F(CliTest, AnalyzeExampleFamily) {
    auto path = write("f.txt", to_text(example_family()));
    auto r = run_cli({"analyze", path});
    EXPECT_EQ(r.code, cli::kSuccess);
    auto j = run_cli({"analyze", path, "--json"});
    ASSERT_EQ(j.code, 0);
    auto report = nlohmann::json::parse(j.out);
    EXPECT_EQ(report["extremal"], true);
    EXPECT_EQ(report["vc_dimension"], 2);
    EXPECT_EQ(report["family_size"], 5);
    EXPECT_EQ(run_cli({"--format", "json", "analyze", path}).out, j.out);
}

TEST_F(CliTest, AnalyzeNonExtremalAndBadInput) {
    EXPECT_EQ(run_cli({"analyze", write("g.json", R"({"n": 2, "sets": [[], [1, 2]]})")}).code, cli::kClaimFailure);
    auto empty = run_cli({"analyze", write("empty.txt", "")});
    EXPECT_EQ(empty.code, cli::kInputError);
    EXPECT_NE(empty.err.find("line 1"), std::string::npos);
    EXPECT_EQ(run_cli({"analyze", (dir_ / "missing.txt").string()}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"analyze", write("bad.txt", "n=2\n1 3\n")}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({}).code, cli::kInputError);
}

TEST_F(CliTest, ReconstructAndReplay) {
    auto path = write("f.txt", to_text(example_family()));
    auto r = run_cli({"reconstruct", path});
    ASSERT_EQ(r.code, 0) << r.err;
    auto script = parse_build_script(r.out);
    EXPECT_EQ(script.steps.size(), 4U);
    auto replayed = run_cli({"replay", write("s.txt", r.out)});
    ASSERT_EQ(replayed.code, 0);
    EXPECT_EQ(parse_set_system(replayed.out), example_family());
}

TEST_F(CliTest, ReconstructFlipsWhenEmptySetMissing) {
    auto path = write("f.txt", "n=2\n1\n1 2\n");
    auto r = run_cli({"reconstruct", path, "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto script = script_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(script.flip, M({1}));
    ASSERT_EQ(script.steps.size(), 1U);
    EXPECT_EQ(script.steps[0], (BuildStep{StepA{2, M({})}}));
    EXPECT_EQ(replay(script), S(2, {{1}, {1, 2}}));

    auto anchored = run_cli({"reconstruct", path, "--anchor", "1,2"});
    ASSERT_EQ(anchored.code, 0);
    auto s2 = parse_build_script(anchored.out);
    EXPECT_EQ(s2.flip, M({1, 2}));
    EXPECT_EQ(replay(s2), S(2, {{1}, {1, 2}}));

    EXPECT_EQ(run_cli({"reconstruct", path, "--anchor", "2"}).code, cli::kInputError);
}

TEST_F(CliTest, ReconstructRefusesNonExtremal) {
    auto r = run_cli({"reconstruct", write("g.txt", "n=2\n-\n1 2\n")});
    EXPECT_EQ(r.code, cli::kClaimFailure);
    EXPECT_NE(r.out.find("not buildable"), std::string::npos);
    EXPECT_NE(r.out.find("3"), std::string::npos);
}

TEST_F(CliTest, ReplayInvalidScript) {
    auto r = run_cli({"replay", write("s.txt", "n=3\nA 1 | -\nA 1 | -\n"), "--format", "json"});
    EXPECT_EQ(r.code, cli::kClaimFailure);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["step_index"], 1);
    EXPECT_EQ(run_cli({"replay", write("t.txt", "n=3\nQ 1 | -\n")}).code, cli::kInputError);
}

TEST_F(CliTest, Peel) {
    auto r = run_cli({"peel", write("f.txt", to_text(example_family()))});
    ASSERT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string line;
    int removals = 0;
    while (std::getline(lines, line))
        if (line.rfind("remove ", 0) == 0) {
            ++removals;
            EXPECT_NE(line.find("still extremal: yes"), std::string::npos);
        }
    EXPECT_EQ(removals, 4);
    EXPECT_NE(r.out.find("remaining "), std::string::npos);
    EXPECT_EQ(run_cli({"peel", write("g.txt", "n=2\n-\n1 2\n")}).code, cli::kInputError);
}

TEST_F(CliTest, RandomIsDeterministic) {
    auto a = run_cli({"random", "--n", "8", "--steps", "20", "--seed", "42"});
    auto b = run_cli({"random", "--n", "8", "--steps", "20", "--seed", "42"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, run_cli({"random", "--n", "8", "--steps", "20", "--seed", "43"}).out);
    EXPECT_EQ(run_cli({"random", "--n", "8", "--steps", "20"}).code, cli::kInputError);

    auto j = nlohmann::json::parse(run_cli({"--format", "json", "random", "--n", "8", "--steps", "20", "--seed", "42"}).out);
    auto system = system_from_json(j["system"]);
    auto analyzed = run_cli({"analyze", write("r.json", to_json(system).dump())});
    EXPECT_EQ(analyzed.code, cli::kSuccess);
    EXPECT_EQ(replay(script_from_json(j["script"])), system);
}

TEST_F(CliTest, Enumerate) {
    auto r = run_cli({"enumerate", "--n", "1", "--require-empty"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "count=2\n{}\n{} {1}\n");
    auto j = nlohmann::json::parse(run_cli({"enumerate", "--n", "2", "--format", "json"}).out);
    EXPECT_GT(j.size(), 2U);
    EXPECT_EQ(run_cli({"enumerate", "--n", "5"}).code, cli::kInputError);
}

TEST_F(CliTest, Verify) {
    auto r = run_cli({"verify", "--theorem", "1", "--n", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(run_cli({"verify", "--theorem", "2", "--n", "2", "--samples", "5", "--seed", "1"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "--theorem", "2", "--n", "2", "--samples", "5"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"verify", "--theorem", "props", "--n", "6", "--samples", "50"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"verify", "--theorem", "props", "--n", "6", "--samples", "50", "--seed", "2"}).code, 0);
    EXPECT_EQ(run_cli({"verify", "--theorem", "1", "--n", "5"}).code, cli::kInputError);
    EXPECT_EQ(run_cli({"verify", "--theorem", "3", "--n", "2"}).code, cli::kInputError);
}

TEST_F(CliTest, ExportDotAndOutFile) {
    auto path = write("f.txt", "n=1\n-\n1\n");
    auto r = run_cli({"export-dot", path});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"{}\" -> \"{1}\" [label=\"1\"]"), std::string::npos);
    auto out = (dir_ / "g.dot").string();
    EXPECT_EQ(run_cli({"--out", out, "export-dot", path}).code, 0);
    std::ifstream in(out);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), r.out);
}
