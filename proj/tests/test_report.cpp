#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>

#include "json.hpp"

#include "horoxt/report.hpp"
#include "horoxt/version.hpp"

using namespace horoxt;

TEST_CASE("real formatting round trips") {
    for (const double x : {0.1, 1.0 / 3.0, 3.141592653589793, 1e300, 5e-324, -2.5, 0.0,
                           0.30396355092701331}) {
        const std::string s = format_real(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("csv table layout") {
    CsvTable t;
    t.meta = {{"command", "test"}, {"seed", "7"}};
    t.columns = {"j", "x"};
    t.rows = {{1.0, 0.5}, {2.0, 0.1}};
    std::ostringstream os;
    t.write(os);
    const std::string expect = std::string("# version: ") + version_string +
                               "\n# command: test\n# seed: 7\n"
                               "j,x\n1,0.5\n2,0.10000000000000001\n";
    CHECK(os.str() == expect);
}

TEST_CASE("experiment report json") {
    ExperimentReport r;
    r.command = "verify demo";
    r.config = {{"suite", "demo"}};
    r.seed = 42;
    r.samples = 1000;
    r.has_ks = true;
    r.ks = 0.0123;
    r.grid = {{0.0, 0.5, 0.51}, {1.0, 0.9, 0.89}};
    std::ostringstream os;
    r.write_json(os);

    const nlohmann::json j = nlohmann::json::parse(os.str());
    CHECK(j["version"] == version_string);
    CHECK(j["command"] == "verify demo");
    CHECK(j["config"]["suite"] == "demo");
    CHECK(j["seed"] == 42);
    CHECK(j["samples"] == 1000);
    CHECK(j["ks"] == 0.0123);
    REQUIRE(j["grid"].size() == 2);
    CHECK(j["grid"][0][0] == 0.0);
    CHECK(j["grid"][1][2] == 0.89);

    // identical content writes identical bytes
    std::ostringstream os2;
    r.write_json(os2);
    CHECK(os.str() == os2.str());
}
