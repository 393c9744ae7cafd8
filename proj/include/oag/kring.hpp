// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "oag/sets.hpp"

namespace oag {

// Element s_coeff*S + const of Z[S]/(S^2 + S), where S is the class of the
// open ray (0,inf).
struct RingClass {
    Int s_coeff = 0;
    Int constant = 0;

    bool operator==(const RingClass&) const = default;
};

inline RingClass ring_S() { return RingClass{1, 0}; }
inline RingClass ring_const(Int c) { return RingClass{0, std::move(c)}; }

RingClass add(const RingClass& x, const RingClass& y);
RingClass neg(const RingClass& x);
// Polynomial product reduced by S^2 = -S.
RingClass mul(const RingClass& x, const RingClass& y);

// The two ring maps to Z: S -> -1 and S -> 0.
Int euler_char(const RingClass& x);
Int hom_zero(const RingClass& x);

// Class of a semilinear set over the divisible group: disjointify, then per
// cell eliminate the last coordinate and classify the fiber (point, bounded
// open interval, half-line, or full line). Throws NonDivisibleGroup unless
// g = Q.
RingClass class_of(const GroupSpec& g, const SemiSet& s);
RingClass class_of(const GroupSpec& g, const TaggedSum& s);

std::string to_string(const RingClass& x);

}  // namespace oag
