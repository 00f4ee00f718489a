#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "kakeya_cli_tests" / name;
    fs::remove_all(p);
    return p;
}

int run(const std::string& args) {
    const std::string cmd = std::string(KAKEYA_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, TranslateHugeEps) {
    const fs::path out = scratch("t10");
    EXPECT_EQ(run("translate-needle --gen circle:1,180 --eps 10 --grid-max 256 --out " + out.string()), 0);
    const auto report = nlohmann::json::parse(slurp(out / "report.json"));
    EXPECT_TRUE(report["pass"].get<bool>());
    EXPECT_EQ(report["result"]["steps"].get<int>(), 1);
    for (const auto& name : report["artifacts"]) {
        const fs::path f = out / name.get<std::string>();
        ASSERT_TRUE(fs::exists(f)) << f;
        if (f.extension() == ".json") EXPECT_NO_THROW((void)nlohmann::json::parse(slurp(f)));
        if (f.extension() == ".pgm") EXPECT_EQ(slurp(f).substr(0, 2), "P5");
        if (f.extension() == ".svg") EXPECT_NE(slurp(f).find("<svg"), std::string::npos);
    }
}

TEST(Cli, ExitCodes) {
    const std::string out = " --grid-max 128 --out " + scratch("codes").string();
    EXPECT_EQ(run("translate-needle --gen circle:1,180 --eps 0.1" + out), 2);
    EXPECT_EQ(run("translate-needle --gen nope:1" + out), 3);
    const fs::path bad = scratch("bad") / "scene.json";
    fs::create_directories(bad.parent_path());
    std::ofstream(bad) << "{\"polylines\": [[1,2";
    EXPECT_EQ(run("translate-needle --scene " + bad.string() + out), 3);
    EXPECT_EQ(run("translate-needle --eps -1" + out), 3);
    EXPECT_EQ(run("rotate-needle --gen segment:1 --target-rot 0,0,1.5 --line 1,0..1,1 --eps 3" + out), 4);
    EXPECT_EQ(run("rotate-needle --gen segment:1 --target-rot 0,0,1.5 --line 0,0..0,1 --eps 3" + out), 0);
    EXPECT_EQ(run("no-such-command"), 3);
}

TEST(Cli, DeterministicReports) {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    const std::string args = "rotate-needle --gen segment:1 --target-rot 0,0,3.14159 --line 0,0..1,0 --eps 3 "
                             "--grid-max 256 --seed 5 --out ";
    ASSERT_EQ(run(args + a.string()), 0);
    ASSERT_EQ(run(args + b.string()), 0);
    for (const char* f : {"report.json", "plan.json", "area.csv", "path.svg", "sweep.pgm"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Cli, RotationMatchesTranslation) {
    const fs::path t = scratch("cross_t"), r = scratch("cross_r");
    ASSERT_EQ(run("translate-needle --gen circle:1,180 --target 2,0 --eps 3 --grid-max 512 --out " + t.string()), 0);
    ASSERT_EQ(run("rotate-needle --gen circle:1,180 --target 2,0 --line inf --eps 3 --grid-max 512 --out " + r.string()),
              0);
    const auto jt = nlohmann::json::parse(slurp(t / "report.json"))["result"]["area"];
    const auto jr = nlohmann::json::parse(slurp(r / "report.json"))["result"]["area"];
    const double diff = std::abs(jt["area"].get<double>() - jr["area"].get<double>());
    EXPECT_LE(diff, jt["uncertainty"].get<double>() + jr["uncertainty"].get<double>() + 0.01) << jt << jr;
}

TEST(Cli, VerifyLemmasAllRowsPass) {
    const fs::path out = scratch("verify");
    EXPECT_EQ(run("verify-lemmas --grid-max 512 --out " + out.string()), 0);
    const auto report = nlohmann::json::parse(slurp(out / "report.json"));
    for (const auto& row : report["result"]["rows"]) EXPECT_TRUE(row["pass"].get<bool>()) << row["row"];
}

TEST(Cli, BesicovitchAndNikodymRun) {
    const fs::path b = scratch("besi");
    // Level 1 deletes the whole scene at this eps, so the areas need not decrease; only the run is checked.
    const int bcode =
        run("besicovitch --gen convex:1,0,0,1,64 --target 1,0 --eps 24 --depth 2 --grid-max 256 --out " + b.string());
    EXPECT_TRUE(bcode == 0 || bcode == 1) << bcode;
    const auto report = nlohmann::json::parse(slurp(b / "report.json"));
    EXPECT_EQ(report["result"]["run"]["levels"].size(), 2u);
    const std::string csv = slurp(b / "area.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    const fs::path n = scratch("niko");
    const int code = run("nikodym --gen circle:1,360 --eps 0.2 --depth 2 --grid 5 --grid-max 256 --out " + n.string());
    EXPECT_EQ(code, 2);  // the planner cannot meet eps0 = 0.2
}
