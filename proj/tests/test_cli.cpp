#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qorbit/identities.hpp"

using Json = nlohmann::ordered_json;

namespace {

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

const char* cli_path() { return std::getenv("QORBIT_CLI"); }

RunResult run(const std::string& args) {
    const std::string out = "/tmp/qorbit_cli_out.txt";
    const std::string err = "/tmp/qorbit_cli_err.txt";
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > " + out + " 2> " + err;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

}  // namespace

TEST_CASE("verify command runs the catalog with correct exit codes") {
    REQUIRE(cli_path() != nullptr);

    const RunResult full = run("verify --series B --rank 2 --r 1");
    CHECK(full.code == 0);
    const Json j = Json::parse(full.out);
    CHECK(j["status"] == "pass");
    CHECK(j["spec"]["series"] == "B");
    CHECK(j["spec"]["r"] == "1");
    CHECK(j["checks"].size() == qorbit::catalog_ids().size());
    for (const Json& c : j["checks"]) {
        CHECK(c["status"] == "pass");
        CHECK(c["residual_entry_count"] == 0);
    }

    const RunResult one = run("verify --series C --rank 1 --r 1/2 --only 2.36");
    CHECK(one.code == 0);
    const Json j1 = Json::parse(one.out);
    CHECK(j1["checks"].size() == 1);
    CHECK(j1["checks"][0]["id"] == "2.36");

    CHECK(run("verify --series X --rank 1").code == 2);
    CHECK(run("verify --series B").code == 2);
    CHECK(run("verify --series B --rank 2 --only nope").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("verify without a threshold covers every admissible band") {
    REQUIRE(cli_path() != nullptr);
    const RunResult r = run("verify --series B --rank 2");
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);

    std::size_t cell_free = 0, banded = 0;
    for (const std::string& id : qorbit::catalog_ids())
        (qorbit::id_needs_cell(id) ? banded : cell_free) += 1;
    CHECK(j["checks"].size() == cell_free + 2 * banded);  // r = 1 and r = 2

    bool saw_r1 = false, saw_r2 = false;
    for (const Json& c : j["checks"]) {
        if (c["r"] == "1") saw_r1 = true;
        if (c["r"] == "2") saw_r2 = true;
    }
    CHECK(saw_r1);
    CHECK(saw_r2);
}

TEST_CASE("algebra command reports graded dimensions and lemma status") {
    REQUIRE(cli_path() != nullptr);

    const RunResult r = run("algebra --series C --rank 1 --r 1/2 --deg 3 --dump");
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["graded_dimensions"] == Json::array({1, 1, 1, 1}));
    CHECK(j["dimension"] == 4);
    CHECK(j["lemmas"].size() > 1);
    std::size_t passed = 0, skipped = 0;
    for (const Json& l : j["lemmas"]) {
        CHECK((l["status"] == "pass" || l["status"] == "skipped"));
        (l["status"] == "pass" ? passed : skipped) += 1;
    }
    CHECK(passed > 0);
    // The braid-compatibility identities need truncation 4 and are skipped.
    CHECK(skipped > 0);
    CHECK(j["dump"][0] == Json::array({"1"}));
    CHECK(j["dump"][1] == Json::array({"z*(1/2,-1/2)"}));

    const RunResult one = run("algebra --series C --rank 1 --r 1/2 --deg 3 --lemma 3.4");
    CHECK(one.code == 0);
    const Json j1 = Json::parse(one.out);
    CHECK(j1["lemmas"].size() == 1);
    CHECK(j1["lemmas"][0]["id"] == "3.4");

    CHECK(run("algebra --series C --rank 1 --r 1/2 --deg -1").code == 2);
    CHECK(run("algebra --series C --rank 1 --r 1/2 --deg 2 --lemma nope").code == 2);
    CHECK(run("algebra --series C --rank 1 --deg 2").code == 2);  // --r required
    // An explicitly named lemma that needs a deeper truncation is an error.
    CHECK(run("algebra --series C --rank 1 --r 1/2 --deg 3 --lemma 5.2").code == 1);
}

TEST_CASE("module command verifies the representation end to end") {
    REQUIRE(cli_path() != nullptr);

    const RunResult r = run("module --series C --rank 1 --r 1/2 --sigma 1 --dump");
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["module"]["dimension"] == 2);
    CHECK(j["module"]["graded_dimensions"] == Json::array({1, 1}));
    for (const Json& c : j["module"]["relation_residuals"]) CHECK(c["status"] == "pass");
    CHECK(j["representation"]["lambda"] == Json::array({-1}));
    CHECK(j["representation"]["oracle_dimension"] == 2);
    CHECK(j["representation"]["dimension"] == 2);
    for (const Json& c : j["representation"]["uh_relation_status"])
        CHECK(c["status"] == "pass");
    CHECK(j["representation"]["s_squared"].size() == 1);
    CHECK(j["joint_kernel_dimension"] == 1);
    CHECK(j["dump"]["dims"] == Json::array({2, 2}));  // legs {N, m}

    // Half-integer sigma on the B1 lattice.
    const RunResult b = run("module --series B --rank 1 --r 1 --sigma 1/2");
    CHECK(b.code == 0);
    CHECK(Json::parse(b.out)["module"]["dimension"] == 2);
}

TEST_CASE("module negative paths split usage errors from domain failures") {
    REQUIRE(cli_path() != nullptr);

    CHECK(run("module --series C --rank 1 --r 1/2 --sigma 5/3").code == 2);
    CHECK(run("module --series C --rank 1 --r 1/2 --sigma 5/4").code == 2);

    const RunResult forced = run("module --series C --rank 1 --r 1/2 --sigma 5/4 --force");
    CHECK(forced.code == 1);
    CHECK(forced.err.find("module did not close") != std::string::npos);
    const Json j = Json::parse(forced.out);
    CHECK(j["status"] == "error");
    CHECK(std::string(j["error"]).find("module did not close") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and csv rows track checks") {
    REQUIRE(cli_path() != nullptr);

    const std::string a = "/tmp/qorbit_det_a.json", b = "/tmp/qorbit_det_b.json";
    const std::string csv = "/tmp/qorbit_det.csv";
    CHECK(run("verify --series C --rank 2 --r 1/2 --out " + a + " --csv " + csv).code == 0);
    CHECK(run("verify --series C --rank 2 --r 1/2 --out " + b).code == 0);
    const std::string ja = slurp(a), jb = slurp(b);
    CHECK(ja == jb);
    CHECK(!ja.empty());

    const std::string rows = slurp(csv);
    CHECK(rows.rfind("id,series,rank,r,sigma,status,residual_entry_count\n", 0) == 0);
    const std::size_t lines = std::count(rows.begin(), rows.end(), '\n');
    CHECK(lines == 1 + Json::parse(ja)["checks"].size());
    CHECK(rows.find("2.36,C,2") != std::string::npos);
}
