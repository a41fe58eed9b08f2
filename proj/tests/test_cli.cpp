#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "slaprp/io.hpp"
#include "support.hpp"

using namespace slaprp;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "slaprp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("slaprp_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                           "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string small_instance(const std::string& name = "i.json", std::uint64_t seed = 3, int fixed = 0) {
        CliRun r = run({"generate", "random", "--aisles", "2", "--bays", "2", "--capacity", "1", "--skus", "3",
                     "--orders", "2", "--max-order-size", "2", "--fixed", std::to_string(fixed), "--seed",
                     std::to_string(seed), "--out", path(name)});
        EXPECT_EQ(r.code, cli::kOk) << r.err;
        return path(name);
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SolveThenValidate) {
    std::string inst = small_instance();
    CliRun s = run({"solve", inst, "--policy", "sshape", "--output", path("sol.json"), "--stats", path("stats.json")});
    ASSERT_EQ(s.code, cli::kOk) << s.err;
    EXPECT_NE(s.out.find("optimal"), std::string::npos);
    auto stats = nlohmann::json::parse(read_file(path("stats.json")));
    EXPECT_TRUE(stats.at("optimal").get<bool>());
    CliRun v = run({"validate", inst, path("sol.json")});
    EXPECT_EQ(v.code, cli::kOk) << v.out << v.err;
}

TEST_F(CliTest, ValidateReportsWrongTotal) {
    std::string inst = small_instance();
    ASSERT_EQ(run({"solve", inst, "--output", path("sol.json")}).code, cli::kOk);
    auto j = nlohmann::json::parse(read_file(path("sol.json")));
    j["objective"] = j["objective"].get<long long>() + 2;
    write_file(path("bad.json"), j.dump());
    CliRun v = run({"validate", inst, path("bad.json")});
    EXPECT_EQ(v.code, cli::kFailure);
    EXPECT_NE((v.out + v.err).find("total mismatch"), std::string::npos);
}

TEST_F(CliTest, ValidateReportsFixedViolation) {
    std::string inst_path = small_instance("f.json", 5, 1);
    Instance inst = load_instance(inst_path);
    ASSERT_EQ(inst.fixed.size(), 1u);
    ASSERT_EQ(run({"solve", inst_path, "--output", path("sol.json")}).code, cli::kOk);
    auto j = nlohmann::json::parse(read_file(path("sol.json")));
    // Swap the fixed SKU with another one.
    int fs_ = inst.fixed[0].first, other = fs_ == 0 ? 1 : 0;
    auto& asg = j["assignment"];
    int la = asg[fs_][1].get<int>(), lb = asg[other][1].get<int>();
    asg[fs_][1] = lb;
    asg[other][1] = la;
    cli::Validation v = cli::validate_solution(inst, j.dump());
    EXPECT_FALSE(v.ok);
    bool found = false;
    for (const auto& d : v.diagnostics) found |= d.find("fixed assignment violated") != std::string::npos;
    EXPECT_TRUE(found);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({"solve", path("missing.json")}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"solve", small_instance(), "--policy", "zigzag"}).code, cli::kUsage);
    CliRun gen = run({"generate", "silva", "--aisles", "3", "--bays", "5", "--orders", "10", "--order-size", "5",
                   "--seed", "7", "--out", path("big.json")});
    ASSERT_EQ(gen.code, cli::kOk);
    CliRun lim = run({"solve", path("big.json"), "--node-limit", "1", "--time-limit", "20"});
    EXPECT_TRUE(lim.code == cli::kLimit || lim.code == cli::kOk);
}

TEST_F(CliTest, GenerateIsReproducible) {
    ASSERT_EQ(run({"generate", "guo", "--alpha", "0.3", "--orders", "5", "--seed", "4", "--out", path("a.json")}).code,
              cli::kOk);
    ASSERT_EQ(run({"generate", "guo", "--alpha", "0.3", "--orders", "5", "--seed", "4", "--out", path("b.json")}).code,
              cli::kOk);
    EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
    CliRun many = run({"generate", "silva", "--aisles", "1", "--bays", "5", "--orders", "1", "--order-size", "3",
                    "--count", "3", "--out", path("many")});
    ASSERT_EQ(many.code, cli::kOk) << many.err;
    int n = 0;
    for (const auto& e : fs::directory_iterator(path("many"))) n += e.path().extension() == ".json";
    EXPECT_EQ(n, 3);
}

TEST_F(CliTest, BenchGridAndCsvRoundTrip) {
    small_instance("a.json", 11);
    small_instance("b.json", 12);
    fs::create_directories(path("set"));
    fs::rename(path("a.json"), path("set/a.json"));
    fs::rename(path("b.json"), path("set/b.json"));
    CliRun b = run({"bench", path("set"), "--policies", "optimal,return,midpoint", "--branchings", "location,combined",
                 "--csv", path("r.csv"), "--no-timing", "--markdown", path("r.md")});
    ASSERT_EQ(b.code, cli::kOk) << b.err;
    std::string csv = read_file(path("r.csv"));
    std::vector<cli::BenchRow> rows = cli::parse_bench_csv(csv);
    int inst_rows = 0, mean_rows = 0;
    for (const auto& r : rows) (r.kind == "mean" ? mean_rows : inst_rows)++;
    EXPECT_EQ(inst_rows, 2 * 3 * 2);
    EXPECT_EQ(mean_rows, 3 * 2);
    EXPECT_EQ(cli::bench_csv(rows, false), csv);
    EXPECT_EQ(csv.rfind("# slaprp bench csv v1", 0), 0u);
    EXPECT_EQ(csv.find("time_s"), std::string::npos);
    EXPECT_FALSE(read_file(path("r.md")).empty());
}

TEST(BenchCsv, GroupMeansAndQuoting) {
    std::vector<cli::BenchRow> rows(3);
    rows[0].instance = "a,b";
    rows[0].policy = rows[1].policy = "optimal";
    rows[2].policy = "return";
    rows[0].opt = 1;
    rows[1].opt = 0;
    rows[0].nodes = 4;
    rows[1].nodes = 2;
    rows[1].error = "said \"no\"";
    auto means = cli::group_means(rows);
    ASSERT_EQ(means.size(), 2u);
    EXPECT_EQ(means[0].kind, "mean");
    EXPECT_DOUBLE_EQ(means[0].opt, 0.5);
    EXPECT_DOUBLE_EQ(means[0].nodes, 3.0);
    std::string csv = cli::bench_csv(rows, true);
    auto back = cli::parse_bench_csv(csv);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[0].instance, "a,b");
    EXPECT_EQ(back[1].error, "said \"no\"");
    EXPECT_EQ(cli::bench_csv(back, true), csv);
}

TEST_F(CliTest, ExportWritesModelAndManifest) {
    std::string inst = small_instance();
    CliRun e = run({"export", inst, "--formulation", "largestgap", "--format", "lp", "--big-m", "--out", path("m.lp")});
    ASSERT_EQ(e.code, cli::kOk) << e.err;
    EXPECT_EQ(read_file(path("m.lp")).find("->"), std::string::npos);
    auto man = nlohmann::json::parse(read_file(path("m.lp.manifest.json")));
    EXPECT_FALSE(man.at("variables").empty());
    CliRun m = run({"export", inst, "--formulation", "mcf", "--format", "mps", "--out", path("m.mps")});
    ASSERT_EQ(m.code, cli::kOk) << m.err;
    EXPECT_NE(read_file(path("m.mps")).find("commodity_"), std::string::npos);
}
