// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oag/errors.hpp"
#include "oag/rat.hpp"

namespace oag {

enum class GroupKind { integers, localized, rationals };

// A concrete ordered abelian group G as a subgroup of the rationals, given by
// its divisibility profile: Z, Z[1/S] for a finite set of primes S, or Q.
class GroupSpec {
  public:
    static GroupSpec integers() { return GroupSpec(GroupKind::integers, {}); }
    static GroupSpec rationals() { return GroupSpec(GroupKind::rationals, {}); }
    // Z[1/S]; an empty S normalizes to Z.
    static GroupSpec localized(std::vector<Int> primes);

    // Accepts the literal syntax: Z | Q | Z[1/p,1/q,...]
    static GroupSpec parse(const std::string& text);

    GroupKind kind() const { return kind_; }
    const std::vector<Int>& inverted_primes() const { return primes_; }

    bool divisible() const { return kind_ == GroupKind::rationals; }
    bool discrete() const { return kind_ == GroupKind::integers; }
    bool dense() const { return kind_ != GroupKind::integers; }

    // Membership: every prime factor of q's denominator is inverted.
    bool contains(const Rat& q) const;

    bool is_p_divisible(const Int& p) const;

    // Smallest prime p with G not p-divisible; nullopt iff G = Q.
    std::optional<Int> minimal_nondivisible_prime() const;

    // b = 1/p for the minimal non-divisible prime p, so that b is outside G
    // while p*b = 1 lies in G. Throws DivisibleGroup for Q.
    Rat witness_b() const;

    std::string to_string() const;

    bool operator==(const GroupSpec&) const = default;

  private:
    GroupSpec(GroupKind k, std::vector<Int> primes) : kind_(k), primes_(std::move(primes)) {}

    GroupKind kind_;
    std::vector<Int> primes_;  // sorted, distinct; nonempty iff kind == localized
};

struct SampleConfig {
    int max_denominator_exponent = 6;
    int retries = 64;
    Int window = 1024;  // width used for unbounded sides
};

// A group element strictly inside (lo, hi); deterministic for a fixed rng state.
// Throws EmptyRegion when the retry bound is exhausted.
Rat sample_element(const GroupSpec& g, const Bound& lo, const Bound& hi, Rng& rng,
                   const SampleConfig& cfg = {});

}  // namespace oag
