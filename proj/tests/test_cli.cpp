#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

// Exercises the isolab binary end to end; ctest runs from the build
// directory, where ./isolab lives.

namespace {

int run(const std::string& args) {
    int rc = std::system(("./isolab " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

nlohmann::json load(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    nlohmann::json j;
    f >> j;
    return j;
}

void write(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

}  // namespace

TEST_CASE("exit codes and report envelope") {
    CHECK(run("roots inspect --series A --rank 3 --out cli_roots.json") == 0);
    nlohmann::json rpt = load("cli_roots.json");
    CHECK(rpt["tool"] == "isolab");
    CHECK(rpt["subcommand"] == "roots inspect");
    CHECK(rpt["rollup"]["all_passed"] == true);
    CHECK(rpt["records"][0]["roots"] == 12);

    // usage error
    CHECK(run("roots inspect") != 0);
    // invalid case data (the root-system gate rejects it)
    CHECK(run("roots inspect --series Z --rank 3") == 2);
}

TEST_CASE("relroots campaign passes and respects --jobs") {
    CHECK(run("relroots verify --max-rank 3 --jobs 4 --out cli_rel.json") == 0);
    nlohmann::json rpt = load("cli_rel.json");
    CHECK(rpt["rollup"]["fail"] == 0);
    CHECK(rpt["records"].size() > 0);
    for (const auto& row : rpt["records"]) CHECK(row["status"] == "pass");
}

TEST_CASE("steinberg enumerate: pass, overflow, hypothesis gate") {
    CHECK(run("steinberg enumerate --series A --rank 2 --ring F2 --out cli_st.json") == 0);
    nlohmann::json rpt = load("cli_st.json");
    CHECK(rpt["records"][0]["st_order"] == 168);
    CHECK(rpt["records"][0]["kernel_order"] == 1);

    // overflow: exit 0 without --strict, 3 with it
    CHECK(run("steinberg enumerate --series A --rank 2 --ring F3 --budget 50 "
              "--out cli_ovf.json") == 0);
    CHECK(load("cli_ovf.json")["records"][0]["status"] == "overflow");
    CHECK(run("steinberg enumerate --series A --rank 2 --ring F3 --budget 50 --strict "
              "--out cli_ovf2.json") == 3);

    // 2 not invertible in F2 for type C
    CHECK(run("steinberg enumerate --series C --rank 2 --ring F2") == 2);
}

TEST_CASE("lab normality: manifest contract") {
    write("cli_cases.json", R"([{"series":"A","rank":2,"ring":"F2"}])");
    CHECK(run("lab normality --manifest cli_cases.json --seeds 2 --out cli_norm.json") == 0);
    nlohmann::json rpt = load("cli_norm.json");
    CHECK(rpt["records"].size() == 4);  // 2 ideals of F2 + 2 random closures
    for (const auto& row : rpt["records"]) CHECK(row["status"] == "pass");

    write("cli_empty.json", "[]");
    CHECK(run("lab normality --manifest cli_empty.json --out cli_empty_rpt.json") == 0);
    CHECK(load("cli_empty_rpt.json")["records"].size() == 0);

    write("cli_bad.json", R"([{"series":"A","rank":99,"ring":"F2"}])");
    CHECK(run("lab normality --manifest cli_bad.json") == 2);
    write("cli_garbage.json", "{not json");
    CHECK(run("lab normality --manifest cli_garbage.json") == 2);
    CHECK(run("lab normality --manifest cli_missing.json") == 2);
}

TEST_CASE("lab diameter and report summarize") {
    CHECK(run("lab diameter --series A --rank 2 --ring F2 --out cli_diam.json") == 0);
    nlohmann::json rpt = load("cli_diam.json");
    CHECK(rpt["records"][0]["gauss_all"] == true);
    CHECK(rpt["records"][0]["diameter"].get<int>() >= 1);

    CHECK(run("report summarize cli_diam.json cli_norm.json --out cli_sum.json") == 0);
    nlohmann::json sum = load("cli_sum.json");
    CHECK(sum["records"].size() == 2);
    for (const auto& row : sum["records"]) CHECK(row["status"] == "pass");
    CHECK(run("report summarize cli_nonexistent.json") == 2);
}

TEST_CASE("reports are deterministic modulo timing") {
    CHECK(run("relcalc verify --series A --rank 2 --out cli_det1.json") == 0);
    CHECK(run("relcalc verify --series A --rank 2 --out cli_det2.json") == 0);
    nlohmann::json a = load("cli_det1.json"), b = load("cli_det2.json");
    a.erase("timing");
    b.erase("timing");
    CHECK(a.dump() == b.dump());

    write("cli_cases2.json", R"([{"series":"A","rank":2,"ring":"Z/4"}])");
    CHECK(run("lab normality --manifest cli_cases2.json --seeds 5 --out cli_det3.json") == 0);
    CHECK(run("lab normality --manifest cli_cases2.json --seeds 5 --out cli_det4.json") == 0);
    nlohmann::json c = load("cli_det3.json"), d = load("cli_det4.json");
    c.erase("timing");
    d.erase("timing");
    CHECK(c.dump() == d.dump());
}
