// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "oag/sets.hpp"

namespace oag {

// x |-> matrix*x + offset, exact rational entries.
struct AffineMap {
    int in_dim = 0, out_dim = 0;
    std::vector<std::vector<Rat>> matrix;  // out_dim rows of in_dim entries
    std::vector<Rat> offset;               // out_dim entries

    static AffineMap identity(int dim);
    std::vector<Rat> apply(const std::vector<Rat>& x) const;
    // this then g
    AffineMap then(const AffineMap& g) const;

    bool operator==(const AffineMap&) const = default;
};

struct Piece {
    std::string source_label, target_label;
    Cell domain;
    AffineMap map;

    bool operator==(const Piece&) const = default;
};

struct PiecewiseMap {
    TaggedSum domain, codomain;
    std::vector<Piece> pieces;

    bool operator==(const PiecewiseMap&) const = default;
};

struct CheckRecord {
    bool pass = true;
    std::string detail;
};

// Machine-checked evidence that a PiecewiseMap is a G-definable bijection.
struct BijectionCertificate {
    bool pass = false;
    std::string reason, witness;  // set on failure
    CheckRecord definability, domain_partition, injectivity, image_cells, image_disjoint,
        image_cover;
    GroupSpec group = GroupSpec::rationals();
};

// Entry-wise definability: matrix entries and offsets all lie in G, which
// guarantees the map carries G^in into G^out.
bool is_definable(const GroupSpec& g, const AffineMap& f);

// Exact image of c under f together with the affine inverse valid on it.
// Requires f injective on the affine hull of c; throws NotInjectiveOnHull.
struct ImageData {
    Cell image;
    AffineMap inverse;
};
ImageData image_with_inverse(const AffineMap& f, const Cell& c);
Cell image_cell(const AffineMap& f, const Cell& c);

// Constraint-level preimage {x : f(x) in c}.
Cell preimage_cell(const AffineMap& f, const Cell& c);

TaggedPoint apply(const PiecewiseMap& f, const TaggedPoint& p);

BijectionCertificate verify_bijection(const GroupSpec& g, const PiecewiseMap& f);

// codomain(f) must match domain(h) positionally (sets equal over G).
PiecewiseMap compose(const GroupSpec& g, const PiecewiseMap& f, const PiecewiseMap& h);
// Throws NotVerified unless cert is a pass certificate for f.
PiecewiseMap invert(const PiecewiseMap& f, const BijectionCertificate& cert);
PiecewiseMap sum(const PiecewiseMap& f, const PiecewiseMap& h);
PiecewiseMap prod(const PiecewiseMap& f, const PiecewiseMap& h);

PiecewiseMap identity_map(const TaggedSum& s);
PiecewiseMap reorder_map(const TaggedSum& s, const std::vector<int>& perm);

// Concatenates two sums, renaming right-hand labels on clash. Returns the
// renaming applied to the right sum.
TaggedSum concat_sums(const TaggedSum& a, const TaggedSum& b,
                      std::vector<std::pair<std::string, std::string>>* renames = nullptr);

}  // namespace oag
