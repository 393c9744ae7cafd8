// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oag {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// nullopt stands for -inf (lower) or +inf (upper) depending on position.
using Bound = std::optional<Rat>;

using Rng = std::mt19937_64;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }
inline bool rat_is_integer(const Rat& q) { return denominator(q) == 1; }

// floor(a/b) for b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(numerator(q), denominator(q)); }

inline Int rat_ceil(const Rat& q) { return -floor_div(-numerator(q), denominator(q)); }

std::string rat_to_string(const Rat& q);

// Parses "n", "-n", "n/d"; throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& s);

bool is_prime(const Int& n);

// Draws uniformly-ish from [0, n); deterministic across platforms for a fixed seed.
inline std::uint64_t rng_below(Rng& rng, std::uint64_t n) { return n <= 1 ? 0 : rng() % n; }

// Draws an integer in [lo, hi]; the ranges used here always fit 64 bits.
Int rng_int_in(Rng& rng, const Int& lo, const Int& hi);

}  // namespace oag
