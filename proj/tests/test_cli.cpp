#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ubeta/cli.hpp"

using namespace ubeta;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string strip_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::string line, kept;
    while (std::getline(in, line)) {
        if (line.find("wall_time_ms") == std::string::npos) kept += line + "\n";
    }
    return kept;
}

}  // namespace

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("1.5") == cplx{1.5, 0.0});
    CHECK(parse_complex("2i") == cplx{0.0, 2.0});
    CHECK(parse_complex("-0.3i") == cplx{0.0, -0.3});
    CHECK(parse_complex("i") == cplx{0.0, 1.0});
    CHECK(parse_complex("-i") == cplx{0.0, -1.0});
    CHECK(parse_complex("1+2i") == cplx{1.0, 2.0});
    CHECK(parse_complex("1-2i") == cplx{1.0, -2.0});
    CHECK(parse_complex("1e-3+2.5e-2i") == cplx{1e-3, 2.5e-2});
    CHECK(parse_complex("0+1i") == cplx{0.0, 1.0});
    CHECK_THROWS_AS(parse_complex("foo"), DomainError);
    CHECK_THROWS_AS(parse_complex("1+2"), DomainError);
    const auto triple = parse_complex_list("1,1.41421356,0+1i");
    CHECK(triple.size() == 3);
    CHECK(triple[2] == cplx{0.0, 1.0});
}

TEST_CASE("eval theta at the degenerate base") {
    const CliRun r = run({"eval", "theta", "--z", "0.3", "--p", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.7") != std::string::npos);
    CHECK(r.out.find("\"re\"") != std::string::npos);
}

TEST_CASE("eval megamma at the half-sum point") {
    // omega = (1, sqrt2, i): half-sum u = (1 + sqrt2 + i)/2
    const CliRun r = run({"eval", "megamma", "--omega", "1,1.41421356237,0+1i", "--u",
                          "1.207106781185+0.5i"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"re\": 1.0") != std::string::npos);
}

TEST_CASE("eval egamma rejects z = 0 with exit code 2") {
    const CliRun r = run({"eval", "egamma", "--z", "0", "--q", "0.3", "--p", "0.2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("z=0 outside domain") != std::string::npos);
}

TEST_CASE("verify elliptic-beta with sampled parameters passes") {
    const CliRun r = run({"verify", "elliptic-beta", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("verify unit-circle-beta with explicit omegas") {
    const CliRun r = run({"verify", "unit-circle-beta", "--omega", "1,1.41421356,0+1i", "--g",
                          "0.3,0.3,0.3,0.3,0.3"});
    CHECK(r.code == 0);
}

TEST_CASE("verify rejects out-of-domain parameters with exit code 2") {
    const CliRun r = run({"verify", "elliptic-beta", "--t", "1.2,0.5,0.5,0.5,0.5", "--q", "0.3",
                          "--p", "0.2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("|t_0|") != std::string::npos);
}

TEST_CASE("reports are deterministic modulo wall time") {
    const CliRun a = run({"verify", "elliptic-beta", "--seed", "42"});
    const CliRun b = run({"verify", "elliptic-beta", "--seed", "42"});
    CHECK(strip_wall_time(a.out) == strip_wall_time(b.out));
    CHECK(!strip_wall_time(a.out).empty());
}

TEST_CASE("suite rho passes and reports counts") {
    const CliRun r = run({"suite", "rho", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"cases_passed\"") != std::string::npos);
    const CliRun r2 = run({"suite", "rho", "--seed", "7"});
    CHECK(strip_wall_time(r.out) == strip_wall_time(r2.out));
}

TEST_CASE("config file supplies defaults, explicit flags win") {
    const char* path = "/tmp/ubeta_test_cfg.json";
    {
        std::ofstream f(path);
        f << "{\"z\": \"0.3\", \"p\": \"0\"}\n";
    }
    const CliRun r = run({"eval", "theta", "--config", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.7") != std::string::npos);
    const CliRun r2 = run({"eval", "theta", "--config", path, "--z", "0.5"});
    CHECK(r2.code == 0);
    CHECK(r2.out.find("0.5") != std::string::npos);
    const CliRun bad = run({"eval", "theta", "--config", "/nonexistent.json"});
    CHECK(bad.code == 2);
}

TEST_CASE("verify report echoes its configuration") {
    const CliRun r = run({"verify", "elliptic-beta", "--seed", "9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"config\"") != std::string::npos);
    CHECK(r.out.find("\"schema\": \"1\"") != std::string::npos);
}

TEST_CASE("sample emits parameters") {
    const CliRun r = run({"sample", "hyp-aw", "--seed", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"g\"") != std::string::npos);
    const CliRun bad = run({"sample", "nonsense"});
    CHECK(bad.code == 2);
}
