// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "oag/maps.hpp"

namespace oag {

// Replayable derivation tree: rule name, serialized parameters, and the
// sub-derivations the rule was applied to.
struct Derivation {
    std::string rule;
    nlohmann::ordered_json params;
    std::vector<std::shared_ptr<const Derivation>> children;
};
using DerivationPtr = std::shared_ptr<const Derivation>;

// A piecewise-affine map together with its pass certificate and provenance.
struct Congruence {
    PiecewiseMap map;
    BijectionCertificate certificate;
    DerivationPtr provenance;

    const TaggedSum& domain() const { return map.domain; }
    const TaggedSum& codomain() const { return map.codomain; }
};

// Certified instance of an additive identity  sum lhs = sum rhs, witnessed by
// a congruence  (+)lhs (+) slack  ~  (+)rhs (+) slack.
struct SlackIdentity {
    std::vector<SemiSet> lhs, rhs;
    TaggedSum slack;
    Congruence congruence;
};

// --- generator congruences ---------------------------------------------------

Congruence cong_identity(const GroupSpec& g, const TaggedSum& s);
Congruence cong_reorder(const GroupSpec& g, const TaggedSum& s, const std::vector<int>& perm);
Congruence cong_translate(const GroupSpec& g, const std::vector<Rat>& t, const SemiSet& dom);
Congruence cong_neg(const GroupSpec& g, const SemiSet& dom);
// u and 1/u must both lie in G.
Congruence cong_scale(const GroupSpec& g, const Rat& u, const SemiSet& dom);
// x_i += coef * x_j
Congruence cong_shear(const GroupSpec& g, const SemiSet& dom, int i, int j, const Rat& coef);
Congruence cong_permute(const GroupSpec& g, const SemiSet& dom, const std::vector<int>& perm);
// 1-dimensional dom embedded as the plane diagonal x |-> (x, x).
Congruence cong_diag(const GroupSpec& g, const SemiSet& dom);
// The 0-dimensional point onto the singleton {coords}.
Congruence cong_point(const GroupSpec& g, const std::vector<Rat>& coords);
// Identity congruence s ~ (+)parts; parts must partition s over G.
Congruence cong_split(const GroupSpec& g, const SemiSet& s, const std::vector<SemiSet>& parts);

// --- combinators --------------------------------------------------------------

Congruence compose_c(const Congruence& f, const Congruence& h);
Congruence inverse_c(const Congruence& f);
Congruence sum_c(const Congruence& f, const Congruence& h);
Congruence prod_c(const Congruence& f, const Congruence& h);
Congruence add_slack(const Congruence& f, const TaggedSum& z);
// Renames components without touching the verified structure.
Congruence relabel(const Congruence& f, const std::vector<std::string>& dom_labels,
                   const std::vector<std::string>& cod_labels);

// --- derived identities --------------------------------------------------------

// (a,inf)^2 ~ (0,inf)x(a,inf) (+) (0,inf)x(a,inf) (+) (a,inf), via the two
// triangle shears and the diagonal; a >= 0, rational.
Congruence split_quadrant(const GroupSpec& g, const Rat& a);

// [(0,a)] + [pt] = 0 with slack (0,inf); requires a in G, a > 0.
SlackIdentity absorb_interval(const GroupSpec& g, const Rat& a);

// 2[(0,b)] + [pt] = 0 with slack (0,inf), where b = 1/p for the minimal
// non-divisible prime p. Dense non-divisible groups only.
SlackIdentity absorb_interval_pair(const GroupSpec& g);

// [(0,a)^2] + [(0,a)] = 0 with slack (0,inf)^2 (+) (0,inf)x(a,inf);
// requires a > 0 outside G, G dense.
SlackIdentity interval_square_identity(const GroupSpec& g, const Rat& a);

// --- the witness ---------------------------------------------------------------

struct WitnessResult {
    TaggedSum X;
    Congruence congruence;  // domain [X..., pt] ~ codomain [X...]
    bool dense = false;
    Rat b;                             // dense case only
    std::array<long, 2> trace{0, 0};   // (squares, strips) reached by the raw trace
    std::array<long, 2> padding{0, 0}; // slack added to meet the target shape
    std::array<long, 2> achieved{0, 0};
    std::array<long, 2> target{6, 8};
};

// A definable X with X (+) {pt} ~ X. Discrete groups get the successor map on
// the positive ray; dense non-divisible groups get the traced identity
// chain landing on copies of (0,inf)^2 and (0,inf)x(b,inf).
WitnessResult derive_witness(const GroupSpec& g);

// True iff c is a verified congruence from x plus one extra point onto x.
bool check_pigeonhole(const GroupSpec& g, const TaggedSum& x, const Congruence& c);

// Re-executes a derivation tree.
Congruence replay(const Derivation& d);

nlohmann::ordered_json derivation_to_json(const Derivation& d);

}  // namespace oag
