#include <doctest.h>

#include "twk/cli.hpp"

#include <fstream>
#include <string>
#include <vector>

using namespace twk;

namespace {

int run(std::initializer_list<std::string> args) {
    return run_cli(std::vector<std::string>(args));
}

std::string mf(const std::string& name) {
    return std::string(TWK_SOURCE_DIR) + "/manifests/" + name;
}

}  // namespace

TEST_CASE("exit code contract: 0 pass, 1 math failure, 2 input error") {
    CHECK(run({"validate", mf("p1-line-bundles.json"), "--object", "O3"}) == 0);
    CHECK(run({"validate", mf("three-open-nerve.json"), "--object", "skew"}) == 1);
    CHECK(run({"validate", mf("p1-line-bundles.json"), "--object", "nope"}) == 2);
    CHECK(run({"validate", "/nonexistent.json", "--object", "x"}) == 2);
    CHECK(run({"frobnicate"}) == 2);
}

TEST_CASE("cohomology command covers the P^1 table") {
    CHECK(run({"cohomology", mf("p1-line-bundles.json"), "--from", "O0", "--to", "O2"}) == 0);
    CHECK(run({"cohomology", mf("p1-line-bundles.json"), "--from", "O0", "--to", "O-2",
               "--format", "json"}) == 0);
    // refusal on non-validating inputs
    CHECK(run({"cohomology", mf("three-open-nerve.json"), "--from", "skew", "--to",
               "L"}) == 1);
    CHECK(run({"cohomology", mf("p1-line-bundles.json"), "--from", "O0", "--to",
               "missing"}) == 2);
}

TEST_CASE("roundtrip, equivariant, nerve and selftest commands") {
    CHECK(run({"roundtrip", mf("p1-line-bundles.json"), "--object", "O3"}) == 0);
    CHECK(run({"equivariant", mf("z2-sign-rep.json"), "--object", "sign"}) == 0);
    CHECK(run({"equivariant", mf("z2-sign-rep.json"), "--object", "O3"}) == 2);
    CHECK(run({"nerve", mf("three-open-nerve.json"), "--level", "2"}) == 0);
    CHECK(run({"nerve", mf("three-open-nerve.json"), "--level", "3", "--format",
               "json"}) == 0);
    CHECK(run({"selftest", "--seed", "3", "--sizes", "2"}) == 0);
}

TEST_CASE("deterministic selftest for a fixed seed") {
    CHECK(run({"selftest", "--seed", "11", "--sizes", "2"}) == 0);
    CHECK(run({"selftest", "--seed", "11", "--sizes", "2"}) == 0);
}

TEST_CASE("injected known-bad fixture fails with a reproducer") {
    CHECK(run({"selftest", "--seed", "11", "--sizes", "2", "--inject-defect"}) == 1);
}

TEST_CASE("malformed manifests exit with the input-error code") {
    std::string path = "/tmp/twk_bad_manifest.json";
    {
        std::ofstream out(path);
        out << R"({"cover": {"indices": ["A"], "nerve": [["A"]], "rings": {"A": "Q"}},
                   "objects": {"x": {"type": "twisted", "locals": {"A": {"0": 1}},
                     "a": [{"tuple": ["A"], "blocks": {"0": [["1/0"]]}}]}}})";
    }
    CHECK(run({"validate", path, "--object", "x"}) == 2);
}
