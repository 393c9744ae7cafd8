// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oag/dsl.hpp"
#include "oag/kring.hpp"
#include "oag/scissors.hpp"

namespace oag::report {

struct CheckResult {
    std::string kind, subject;
    bool pass = false;
    std::string detail;
};

struct SamplingReport {
    std::uint64_t seed = 0, count = 0, failures = 0;
};

struct WitnessReport {
    std::vector<std::string> components;
    std::vector<long> multiplicities;
    std::vector<long> target{6, 8};
    std::vector<long> trace, padding;
    bool match = false;
    std::string b;
};

struct Report {
    std::string command, group;
    std::vector<CheckResult> checks;
    std::optional<WitnessReport> witness;
    std::optional<SamplingReport> sampling;
    int status = 0;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
    std::string render(const std::string& format) const;
};

struct Options {
    std::string format = "text";
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    std::string emit;
};

Report run_check(const dsl::Script& script, const Options& opts);
Report run_derive_witness(const GroupSpec& g, const Options& opts);
// expr is either a path-loaded script (handled by the CLI) or an inline
// braced set expression, evaluated over Q.
Report run_class_script(const dsl::Script& script, const Options& opts);
Report run_class_expr(const std::string& expr, const Options& opts);
Report run_sample_verify(const dsl::Script& script, const std::string& map_name, const Options& opts);

// Seeded exact round trips through a verified congruence and its inverse.
SamplingReport sample_roundtrip(const GroupSpec& g, const Congruence& c, std::uint64_t samples,
                                std::uint64_t seed);

// Serializes a derived witness as a script that re-verifies under `check`.
std::string emit_witness_script(const GroupSpec& g, const WitnessResult& w);

}  // namespace oag::report
