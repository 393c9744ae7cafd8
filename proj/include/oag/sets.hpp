// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oag/group.hpp"
#include "oag/linalg.hpp"
#include "oag/rat.hpp"

namespace oag {

enum class Rel { lt, le, eq };

// One linear condition  sum_i coeffs[i]*x_i  REL  constant.
//
// Canonical form: integer coefficients and an integer constant (denominators
// cleared), divided by the gcd of all of them; equalities have their first
// nonzero coefficient positive. A constraint with no variables left survives
// canonicalization only as the falsity marker 0 < 0 (see Cell).
struct LinConstraint {
    std::vector<Int> coeffs;
    Rat constant;
    Rel rel = Rel::le;

    bool operator==(const LinConstraint&) const = default;
};

// Conjunction of constraints in G^dim; a convex rational polyhedron piece.
// Constraints are canonicalized, sorted, and deduplicated. A syntactically
// infeasible cell collapses to the single marker constraint 0 < 0.
struct Cell {
    int dim = 0;
    std::vector<LinConstraint> constraints;

    bool operator==(const Cell&) const = default;
};

// Finite union of same-dimension cells.
struct SemiSet {
    int dim = 0;
    std::vector<Cell> cells;

    bool operator==(const SemiSet&) const = default;
};

struct TaggedComponent {
    std::string label;
    SemiSet set;

    bool operator==(const TaggedComponent&) const = default;
};

// Formal finite disjoint union of semilinear sets across ambient dimensions.
struct TaggedSum {
    std::vector<TaggedComponent> components;

    const SemiSet* find(const std::string& label) const;
    bool operator==(const TaggedSum&) const = default;
};

struct TaggedPoint {
    std::string label;
    std::vector<Rat> coords;

    bool operator==(const TaggedPoint&) const = default;
};

// --- construction -----------------------------------------------------------

LinConstraint make_constraint(std::vector<Int> coeffs, Rat constant, Rel rel);
// Clears rational coefficients to the canonical integer form.
LinConstraint constraint_from_rational(const std::vector<Rat>& coeffs, Rat constant, Rel rel);
Cell make_cell(int dim, std::vector<LinConstraint> constraints);
Cell empty_cell(int dim);
bool cell_marked_empty(const Cell& c);
SemiSet make_semiset(int dim, std::vector<Cell> cells);

// The one-point set in G^0 (the empty tuple).
SemiSet point_space();
// {p} as a pinned cell in G^n.
SemiSet singleton(const std::vector<Rat>& p);

// Open interval (lo, hi), with nullopt for an infinite end. Throws BadBounds.
SemiSet interval(const Bound& lo, const Bound& hi);

TaggedSum make_sum(std::vector<TaggedComponent> components);

// --- boolean structure ------------------------------------------------------

Cell intersect(const Cell& a, const Cell& b);
SemiSet intersect(const SemiSet& a, const SemiSet& b);
SemiSet union_(const SemiSet& a, const SemiSet& b);
SemiSet product(const SemiSet& a, const SemiSet& b);
// Exact difference over Q^n, computed by distributing complements.
SemiSet difference(const SemiSet& a, const SemiSet& b);

// Extensionally equal set with pairwise disjoint cells (over Q).
SemiSet disjointify(const SemiSet& s);

// --- decision procedures ----------------------------------------------------

// No rational solution? Gaussian elimination on equalities, then
// Fourier-Motzkin with strictness tracking.
bool is_empty_Q(const Cell& c);
bool is_empty_Q(const SemiSet& s);
// Test hook: fixed elimination order over the free variables after the
// equality reduction (order indices are positions among the free variables).
bool is_empty_Q_order(const Cell& c, const std::vector<int>& free_order);

// Replaces every inequality that holds with equality on all of c by the
// corresponding equality; the equality system of the result cuts out the
// affine hull. Precondition: c not empty over Q.
Cell hull_strengthen(const Cell& c);

// Does c meet G^n? Dense groups: affine-hull G-point via Smith normal form,
// then relative-interior nonemptiness. Z supports only per-coordinate cells
// and throws UnsupportedDiscreteCell otherwise.
bool has_G_point(const GroupSpec& g, const Cell& c);
bool has_G_point(const GroupSpec& g, const SemiSet& s);
// Also exposes the constructed hull witness for pinned/dense cells (the
// witness lies on the affine hull, not necessarily inside the cell).
std::optional<std::vector<Rat>> hull_G_witness(const GroupSpec& g, const Cell& c);

bool subset_G(const GroupSpec& g, const SemiSet& a, const SemiSet& b);
bool equals_G(const GroupSpec& g, const SemiSet& a, const SemiSet& b);
bool disjoint_G(const GroupSpec& g, const SemiSet& a, const SemiSet& b);

bool member(const GroupSpec& g, const SemiSet& s, const std::vector<Rat>& pt);
bool sum_member(const GroupSpec& g, const TaggedSum& ts, const TaggedPoint& p);
// Pure rational satisfaction, no G-membership filter.
bool cell_contains_point(const Cell& c, const std::vector<Rat>& pt);

// A G^n-point of s: solve equalities symbolically, sample free coordinates
// inside their projected bounds, reject coordinates outside G. Deterministic
// per rng state; throws SamplingExhausted.
std::vector<Rat> sample_point(const GroupSpec& g, const SemiSet& s, Rng& rng,
                              const SampleConfig& cfg = {});

// Constructive variant used for witness reporting: a genuine G-point of s if
// one can be found with bounded effort.
std::optional<std::vector<Rat>> find_G_point(const GroupSpec& g, const SemiSet& s, std::uint64_t seed = 0);

std::string to_string(const Cell& c);
std::string to_string(const SemiSet& s);

}  // namespace oag
