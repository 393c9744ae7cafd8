// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parse scripts, verify congruences, derive collapse
// witnesses, compute classes over Q, and run seeded round-trip samples.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oag/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw oag::Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const oag::report::Report& rep, const std::string& format) {
    std::cout << rep.render(format);
    return rep.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact scissors-congruence toolkit for ordered abelian subgroups of Q"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text or json")->capture_default_str();

    oag::report::Options opts;

    auto* cmd_check = app.add_subcommand("check", "run the check statements of a script");
    std::string check_file;
    cmd_check->add_option("file", check_file, "input .oag script")->required();
    cmd_check->add_option("--samples", opts.samples, "sample count for sampling checks");
    cmd_check->add_option("--seed", opts.seed, "rng seed");

    auto* cmd_derive = app.add_subcommand("derive-witness",
                                          "derive and verify a set X with X + pt ~ X");
    std::string group_text;
    cmd_derive->add_option("--group", group_text, "group literal, e.g. Z, Z[1/3], Q")->required();
    cmd_derive->add_option("--samples", opts.samples, "round-trip sample count");
    cmd_derive->add_option("--seed", opts.seed, "rng seed");
    cmd_derive->add_option("--emit", opts.emit, "write the witness as a re-checkable script");

    auto* cmd_class = app.add_subcommand("class", "compute ring classes over Q");
    std::string class_arg;
    cmd_class->add_option("target", class_arg, "script path or inline set expression")->required();

    auto* cmd_sample = app.add_subcommand("sample-verify",
                                          "verify a declared map and sample exact round trips");
    std::string sample_file, sample_map;
    cmd_sample->add_option("file", sample_file, "input .oag script")->required();
    cmd_sample->add_option("--map", sample_map, "map name to verify")->required();
    cmd_sample->add_option("--samples", opts.samples, "round-trip sample count");
    cmd_sample->add_option("--seed", opts.seed, "rng seed");

    CLI11_PARSE(app, argc, argv);
    opts.format = format;

    try {
        if (*cmd_check) {
            oag::dsl::Script script;
            try {
                script = oag::dsl::parse(read_file(check_file));
            } catch (const oag::Error& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            return emit(oag::report::run_check(script, opts), format);
        }
        if (*cmd_derive) {
            oag::GroupSpec g = oag::GroupSpec::rationals();
            try {
                g = oag::GroupSpec::parse(group_text);
            } catch (const oag::Error& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            return emit(oag::report::run_derive_witness(g, opts), format);
        }
        if (*cmd_class) {
            try {
                std::string text;
                bool is_file = false;
                {
                    std::ifstream probe(class_arg);
                    is_file = probe.good();
                }
                oag::report::Report rep;
                if (is_file)
                    rep = oag::report::run_class_script(oag::dsl::parse(read_file(class_arg)), opts);
                else
                    rep = oag::report::run_class_expr(class_arg, opts);
                return emit(rep, format);
            } catch (const oag::Error& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
        }
        if (*cmd_sample) {
            oag::dsl::Script script;
            try {
                script = oag::dsl::parse(read_file(sample_file));
            } catch (const oag::Error& e) {
                std::cerr << e.what() << "\n";
                return 2;
            }
            return emit(oag::report::run_sample_verify(script, sample_map, opts), format);
        }
    } catch (const oag::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
