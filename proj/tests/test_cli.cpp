#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded and returns exit status and stdout.
Run run(const std::string& args) {
    std::string cmd = std::string(DIAGLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expected_code = 0) {
    auto r = run(args);
    EXPECT_EQ(r.code, expected_code) << args;
    return json::parse(r.out);
}

} // namespace

TEST(Cli, BuildGraph6) {
    auto r = run("build --group C2 --m 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "C~\n");
    auto c = run("build --group C3 --m 3 --format edgelist");
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 108);
    auto d = run("build --group C3 --m 2 --format dot");
    EXPECT_NE(d.out.find("graph"), std::string::npos);
}

TEST(Cli, BuildToFile) {
    std::string path = testing::TempDir() + "diaglab_cli_k4.g6";
    auto j = run_json("build --group C2 --m 2 --out " + path);
    EXPECT_EQ(j["N"], 4);
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    EXPECT_EQ(line, "C~");
}

TEST(Cli, Semilattice) {
    auto j = run_json("semilattice --group C2 --m 3");
    EXPECT_EQ(j["elements"].size(), 12u);
    EXPECT_EQ(j["elements"][0]["name"], "E");
    auto dot = run("semilattice --group C2 --m 2 --format dot");
    EXPECT_EQ(dot.code, 0);
    EXPECT_NE(dot.out.find("digraph"), std::string::npos);
}

TEST(Cli, Mobius) {
    auto j = run_json("mobius --group C3 --m 3");
    EXPECT_EQ(j["mu_bottom_top"], -3);
    EXPECT_TRUE(j["mismatches"].empty());
}

TEST(Cli, Spectrum) {
    auto j = run_json("spectrum --group C3 --m 2");
    EXPECT_EQ(j["agree"], true);
    EXPECT_EQ(j["closed_form"]["entries"],
              json::parse(R"([{"eigenvalue":-3,"multiplicity":2},{"eigenvalue":0,"multiplicity":6},{"eigenvalue":6,"multiplicity":1}])"));
    EXPECT_EQ(run("spectrum --group C3 --m 1").code, 2);
}

TEST(Cli, DiameterAndCliques) {
    auto d = run_json("diameter --group C3 --m 3");
    EXPECT_EQ(d["diameter"], 2);
    EXPECT_EQ(d["dr"], false);
    auto c = run_json("cliques --group C3 --m 3");
    EXPECT_EQ(c["maximal_cliques"], 36);
    EXPECT_EQ(c["cover_valid"], true);
}

TEST(Cli, Chromatic) {
    auto j = run_json("chromatic --group C3 --m 3");
    EXPECT_EQ(j["chi"], 3);
    EXPECT_TRUE(j["conjecture"].is_null());
    auto k = run_json("chromatic --group C4 --m 2");
    EXPECT_EQ(k["conjecture"], 6);
}

TEST(Cli, Mapping) {
    auto j = run_json("mapping --group S3");
    EXPECT_EQ(j["hall_paige"], false);
    EXPECT_TRUE(j["complete_mapping"].is_null());
    auto q = run_json("mapping --group C3");
    EXPECT_EQ(q["complete_mapping"].size(), 3u);
}

TEST(Cli, Symmetry) {
    auto j = run_json("symmetry --group C3 --m 2");
    EXPECT_EQ(j["order"], 108);
    EXPECT_EQ(j["order_formula"], 108);
    EXPECT_EQ(j["primitive"], false);
}

TEST(Cli, CheckAll) {
    auto j = run_json("check-all --group C3 --m 3");
    EXPECT_EQ(j["ok"], true);
    auto t = run("check-all --group C4 --m 2 --format text");
    EXPECT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("chromatic.value"), std::string::npos);
}

TEST(Cli, Grid) {
    auto j = run_json("grid --groups C2,C3 --dims 2-3 -j 2");
    EXPECT_EQ(j["instances"].size(), 4u);
    EXPECT_EQ(j["failures"], 0);
    auto e = run_json("grid --groups C2,nope --dims 2", 2);
    EXPECT_EQ(e["failures"], 1);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("build --group C1 --m 2").code, 2);
    EXPECT_EQ(run("build --group Z7 --m 2").code, 2);
    EXPECT_EQ(run("build --group").code, 2);
    EXPECT_EQ(run("build --group C3 --m 0").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("build --group C3 --m 2 --format svg").code, 2);
    EXPECT_EQ(run("build --group C5 --m 6 --cap-vertices 1000").code, 3);
    EXPECT_EQ(run("check-all --group C5 --m 6 --cap-vertices 1000").code, 3);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, EnvironmentCap) {
    auto r = run("build --group C5 --m 5");
    EXPECT_EQ(r.code, 0);
    std::string cmd = "DIAGLAB_CAP_VERTICES=100 " + std::string(DIAGLAB_CLI_PATH) + " build --group C5 --m 5 >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 3);
}

TEST(Cli, DimensionDefaultsToTwo) {
    auto r = run("build --group C3 --format edgelist");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 27);
}

TEST(Cli, TextFormat) {
    auto r = run("mobius --group C2 --m 2 --format text");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("mu_bottom_top: 2"), std::string::npos);
}

TEST(Cli, OutputCarriesSchemaRequiredKeys) {
    std::ifstream f(std::string(DIAGLAB_DATA_DIR) + "/../../docs/report-schema.json");
    ASSERT_TRUE(f.good());
    auto defs = json::parse(f)["$defs"];
    std::vector<std::pair<std::string, std::string>> cases{
        {"semilattice", "semilattice --group C3 --m 3"}, {"mobius", "mobius --group C3 --m 3"},
        {"spectrum", "spectrum --group C4 --m 3"},       {"diameter", "diameter --group C4 --m 2"},
        {"cliques", "cliques --group V4 --m 2"},         {"chromatic", "chromatic --group C4 --m 2"},
        {"mapping", "mapping --group S3"},               {"symmetry", "symmetry --group S3 --m 3"},
        {"ledger", "check-all --group S3 --m 3"},        {"grid", "grid --groups C2 --dims 2-3"}};
    for (auto& [def, args] : cases) {
        auto j = run_json(args);
        for (auto& key : defs[def]["required"]) EXPECT_TRUE(j.contains(key.get<std::string>())) << def << ": " << key;
    }
}
