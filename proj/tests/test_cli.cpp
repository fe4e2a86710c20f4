#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "keller/polymap.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(KELLER_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "keller-cli-test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path p = scratch_dir() / name;
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST_CASE("check-keller verdicts and exit codes") {
    auto good = write_file("good.map", "nvars: 2\nF1: x1 + x2^3\nF2: x2\n");
    auto r = run("check-keller " + good.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output == "keller: true\ndet: 1\n");

    auto bad = write_file("bad.map", "nvars: 2\nF1: x1^2\nF2: x2\n");
    auto rb = run("check-keller " + bad.string());
    CHECK(rb.exit_code == 1);
    CHECK(rb.output == "keller: false\ndet: 2*x1\n");
}

TEST_CASE("invert prints a map file and round-trips") {
    auto good = write_file("inv.map", "nvars: 2\nF1: x1 + x2^3\nF2: x2\n");
    auto r = run("invert " + good.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output == "nvars: 2\nF1: x1 - x2^3\nF2: x2\n");

    // inverse of the inverse is the original map
    auto inv_file = write_file("inv2.map", r.output);
    auto rr = run("invert " + inv_file.string());
    CHECK(rr.exit_code == 0);
    CHECK(keller::PolyMap::parse(rr.output) ==
          keller::PolyMap::parse("nvars: 2\nF1: x1 + x2^3\nF2: x2\n"));

    auto quad = write_file("quad.map", "nvars: 2\nF1: x1 + x1^2\nF2: x2\n");
    CHECK(run("invert " + quad.string() + " --max-degree 10").exit_code == 1);
}

TEST_CASE("bound report") {
    auto good = write_file("bound.map", "nvars: 2\nF1: x1 + x2^3\nF2: x2\n");
    auto r = run("bound " + good.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "n: 2\nd: 3\nr: 1\nkernel_dim: 1\nbound: 3\nbcw_bound: 3\n"
          "actual_inverse_degree: 3\n");
}

TEST_CASE("line-cert") {
    auto good = write_file("cert.map", "nvars: 2\nF1: x1 + x2^3\nF2: x2\n");
    auto r = run("line-cert " + good.string() + " --point 1,1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("valid: true") != std::string::npos);

    auto rz = run("line-cert " + good.string() + " --point 0,0");
    CHECK(rz.exit_code == 2);
}

TEST_CASE("expand-druzkowski") {
    auto spec = write_file("shift.spec", "d: 3\n0 1\n0 0\n");
    auto r = run("expand-druzkowski " + spec.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output == "nvars: 2\nF1: x1 + x2^3\nF2: x2\n");
}

TEST_CASE("gen is deterministic and emitted files re-parse") {
    fs::path out1 = scratch_dir() / "gen1";
    fs::path out2 = scratch_dir() / "gen2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    std::string args = "gen --kind triangular-keller -n 3 -d 3 --seed 4 --count 5 --out ";
    CHECK(run(args + out1.string()).exit_code == 0);
    CHECK(run(args + out2.string()).exit_code == 0);
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(out1)) {
        std::ifstream a(entry.path());
        std::ifstream b(out2 / entry.path().filename());
        std::string sa((std::istreambuf_iterator<char>(a)), {});
        std::string sb((std::istreambuf_iterator<char>(b)), {});
        CHECK(sa == sb);
        CHECK(keller::PolyMap::parse(sa).nvars() == 3);
        ++seen;
    }
    CHECK(seen == 5);

    CHECK(run("gen --kind nonsense -n 2 -d 2 --count 1 --out " + out1.string())
              .exit_code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("invert /nonexistent/path.map").exit_code == 2);
}

TEST_CASE("verify-suite small run") {
    auto r = run("verify-suite --seed 7 --count 6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("tight_theorem3_instance: pass") != std::string::npos);
    CHECK(r.output.find("negative_controls: pass") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}
