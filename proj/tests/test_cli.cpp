// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace std::string_literals;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    std::string cmd = "'"s + OAG_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

std::string corpus_file(const std::string& rel) {
    return (fs::path(OAG_CORPUS_DIR) / rel).string();
}

}  // namespace

TEST_CASE("check passes on a partition script and exits 0") {
    auto p = write_temp("cli_partition.oag",
                        "group G = Z[1/3]\n"
                        "set R = { (x) : 0 < x }\n"
                        "set A = { (x) : 0 < x, x < 1 }\n"
                        "set M = { (x) : x = 1 }\n"
                        "set T = { (x) : 1 < x }\n"
                        "set U = { (x) : 0 < x, x < 1 } | { (x) : x = 1 } | { (x) : 1 < x }\n"
                        "check equal R U\n");
    RunResult r = run_cli("check " + p.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
}

TEST_CASE("check reports a midpoint witness over Q and exits 1") {
    auto p = write_temp("cli_midpoint.oag",
                        "group G = Q\n"
                        "set A = { (x) : 0 < x, x < 1 }\n"
                        "set B = { (x) : 0 < x, 2*x < 1 } | { (x) : 1/2 < x, x < 1 }\n"
                        "check equal A B\n");
    RunResult r = run_cli("check " + p.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("1/2") != std::string::npos);
}

TEST_CASE("parse errors exit 2") {
    RunResult r = run_cli("check " + corpus_file("bad/b04_unbalanced.oag"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("bijection checks run from scripts") {
    RunResult ok = run_cli("check " + corpus_file("valid/17_successor.oag"));
    CHECK(ok.exit_code == 0);
    auto p = write_temp("cli_bad_bijection.oag",
                        "group G = Q\n"
                        "set R = { (x) : 0 < x }\n"
                        "map f : R -> R {\n  on R : (x) -> (x + 1)\n}\n"
                        "check bijection f\n");
    RunResult bad = run_cli("check " + p.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("cover") != std::string::npos);
}

TEST_CASE("class subcommand evaluates inline expressions") {
    RunResult r = run_cli("class '{ (x) : 0 < x, x < 1 }'");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("(0, -1)") != std::string::npos);
    CHECK(r.output.find("euler -1") != std::string::npos);

    RunResult ray = run_cli("class '{ (x) : 0 < x }'");
    CHECK(ray.output.find("(1, 0)") != std::string::npos);

    RunResult file = run_cli("class " + corpus_file("valid/09_class.oag"));
    CHECK(file.exit_code == 0);
}

TEST_CASE("class requires the divisible group") {
    auto p = write_temp("cli_class_z.oag",
                        "group G = Z\nset A = { (x) : 0 < x }\ncheck class A\n");
    RunResult r = run_cli("class " + p.string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("derive-witness over Q exits 2 with a divisibility message") {
    RunResult r = run_cli("derive-witness --group Q");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("divisible") != std::string::npos);
}

TEST_CASE("derive-witness over Z is fast and exits 0") {
    RunResult r = run_cli("derive-witness --group Z --samples 500 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("failures 0") != std::string::npos);
}

TEST_CASE("sample-verify runs exact round trips") {
    RunResult r = run_cli("sample-verify " + corpus_file("valid/17_successor.oag") +
                          " --map s --samples 300 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("failures 0") != std::string::npos);
    RunResult missing = run_cli("sample-verify " + corpus_file("valid/17_successor.oag") +
                                " --map zz");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("sample-verify the quadrant decomposition on 1000 samples") {
    RunResult r = run_cli("sample-verify " + corpus_file("valid/23_quadrant.oag") +
                          " --map f --samples 1000 --seed 9");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("failures 0") != std::string::npos);
}

TEST_CASE("json reports are deterministic per seed") {
    std::string cmd = "--format json derive-witness --group Z --samples 200 --seed 11";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"command\"") != std::string::npos);
    CHECK(a.output.find("\"sampling\"") != std::string::npos);
    CHECK(a.output.find("\"status\"") != std::string::npos);
}

TEST_CASE("derive-witness emits a script that re-checks clean") {
    fs::path out = fs::temp_directory_path() / "cli_emitted_discrete.oag";
    RunResult r = run_cli("derive-witness --group Z --samples 100 --seed 1 --emit " + out.string());
    CHECK(r.exit_code == 0);
    RunResult rc = run_cli("check " + out.string());
    CHECK(rc.exit_code == 0);
}
