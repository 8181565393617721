#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* cli_path() {
    const char* p = std::getenv("QCB_CLI_PATH");
    REQUIRE(p != nullptr);
    return p;
}

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "qcb_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    static int seq = 0;
    fs::path out = scratch() / ("out" + std::to_string(seq) + ".txt");
    fs::path err = scratch() / ("err" + std::to_string(seq) + ".txt");
    ++seq;
    std::string cmd = std::string(cli_path()) + " " + args + " > " +
                      out.string() + " 2> " + err.string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("datum queries") {
    auto r = run("datum show --type A2");
    CHECK(r.code == 0);
    CHECK(r.out.find("i") != std::string::npos);
    CHECK(r.out.find("2") != std::string::npos);

    auto f = run("datum frame --type A1");
    CHECK(f.code == 0);
    CHECK(f.out.find("i'") != std::string::npos);

    auto f2 = run("datum frame --type A1 --times 2");
    CHECK(f2.code == 0);
    CHECK(f2.out.find("i''") != std::string::npos);
}

TEST_CASE("algebra queries") {
    auto r = run("falg dim --type A2 --nu 1,1");
    CHECK(r.code == 0);
    CHECK(r.out.find("2") != std::string::npos);

    auto g = run("falg gram --type A1 --nu 2");
    CHECK(g.code == 0);

    auto s = run("falg serre-check --type A2");
    CHECK(s.code == 0);
    CHECK(s.out.find("[PASS]") != std::string::npos);
    CHECK(s.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("basis and module queries") {
    auto r = run("cb list --type A2 --nu 2,2");
    CHECK(r.code == 0);

    auto e = run("cb expand --type A2 --word \"i(1).j(1).i(1)\"");
    CHECK(e.code == 0);

    auto m = run("module weights --type A1 --lam 2");
    CHECK(m.code == 0);

    auto d = run("tensor diamond --type A1 --m 1 --n 1");
    CHECK(d.code == 0);
    CHECK(d.out.find("v^-1") != std::string::npos);
}

TEST_CASE("verification drivers succeed") {
    auto r = run("framed verify-cb --type A1 --m 1 --n 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("[PASS]") != std::string::npos);

    auto c = run("crystal check --type A1 --m 1 --n 1 --suite thetalambda");
    CHECK(c.code == 0);
}

TEST_CASE("error handling") {
    CHECK(run("").code == 2);
    CHECK(run("datum").code == 2);
    CHECK(run("--bogus-flag").code == 2);
    CHECK(run("datum show --type E8").code == 2);
    CHECK(run("falg dim --type A2 --nu 1,1,1").code == 2);
    auto r = run("datum show --type E8");
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(run("--help").code == 0);
}

TEST_CASE("json reports are deterministic") {
    fs::path rep = scratch() / "rep.json";
    std::string cmd = "framed verify-cb --type A1 --m 1 --n 1 --report " + rep.string();
    auto r1 = run(cmd);
    CHECK(r1.code == 0);
    std::string b1 = slurp(rep);
    auto r2 = run(cmd);
    CHECK(r2.code == 0);
    std::string b2 = slurp(rep);
    REQUIRE_FALSE(b1.empty());
    CHECK(b1 == b2); // byte identical without --timing

    auto j = nlohmann::json::parse(b1);
    CHECK(j.at("schema") == "qcb-report-v1");
    CHECK(j.contains("version"));
    CHECK(j.contains("command"));
    CHECK(j.contains("datum_fingerprint"));
    CHECK(j.at("summary").at("failed") == 0);
    CHECK(j.at("checks").is_array());
    CHECK_FALSE(j.contains("elapsed_ms"));

    // with --timing the timing field appears
    fs::path rep3 = scratch() / "rep3.json";
    auto r3 = run("framed verify-cb --type A1 --m 1 --n 1 --timing --report " + rep3.string());
    CHECK(r3.code == 0);
    auto j3 = nlohmann::json::parse(slurp(rep3));
    CHECK(j3.contains("elapsed_ms"));
}

TEST_CASE("query reports") {
    fs::path rep = scratch() / "query.json";
    auto r = run("falg dim --type A2 --nu 2,1 --report " + rep.string());
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(slurp(rep));
    CHECK(j.at("schema") == "qcb-query-v1");
    CHECK(j.at("output").is_array());
}

TEST_CASE("cache round trip through the cli") {
    fs::path dir = scratch() / "cache";
    std::string base = "falg gram --type A2 --nu 2,1 --cache-dir " + dir.string();
    auto r1 = run(base);
    CHECK(r1.code == 0);
    bool found = false;
    fs::path file;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") { found = true; file = e.path(); }
    REQUIRE(found);

    // warm run gives identical output
    auto r2 = run(base);
    CHECK(r2.code == 0);
    CHECK(r2.out == r1.out);

    // corrupt cache is ignored with a warning, output unchanged
    std::ofstream(file) << "garbage";
    auto r3 = run(base);
    CHECK(r3.code == 0);
    CHECK(r3.out == r1.out);
    CHECK(r3.err.find("cache") != std::string::npos);
}

TEST_CASE("config file datum and weights") {
    fs::path cfg = scratch() / "custom.cfg";
    std::ofstream(cfg) << "# custom rank-2 datum, one matrix row per line\n"
                          "[datum]\n"
                          "2, -1\n"
                          "-1, 2\n"
                          "[weights]\n"
                          "xi = 1, 0\n"
                          "lam = 0, 1\n";
    auto r = run("falg dim --config " + cfg.string() + " --nu 1,1");
    CHECK(r.code == 0);
    CHECK(r.out.find("2") != std::string::npos);

    auto v = run("framed verify-positivity --config " + cfg.string() +
                 " --xi xi --lam lam --scope tensor");
    CHECK(v.code == 0);
    CHECK(v.out.find("[FAIL]") == std::string::npos);

    auto bad = run("falg dim --config " + (scratch() / "missing.cfg").string() +
                   " --nu 1,1");
    CHECK(bad.code == 2);
}
