// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/kring.hpp"

#include <sstream>

#include "oag/errors.hpp"
#include "oag/linalg.hpp"

namespace oag {

RingClass add(const RingClass& x, const RingClass& y) {
    return RingClass{x.s_coeff + y.s_coeff, x.constant + y.constant};
}

RingClass neg(const RingClass& x) { return RingClass{-x.s_coeff, -x.constant}; }

RingClass mul(const RingClass& x, const RingClass& y) {
    // (aS + b)(cS + d) = ac S^2 + (ad + bc) S + bd, with S^2 = -S
    return RingClass{x.s_coeff * y.constant + y.s_coeff * x.constant - x.s_coeff * y.s_coeff,
                     x.constant * y.constant};
}

Int euler_char(const RingClass& x) { return x.constant - x.s_coeff; }
Int hom_zero(const RingClass& x) { return x.constant; }

namespace {

RingClass class_of_cell(const Cell& cell);

// Replace constraint i by the given relation and reclassify.
RingClass class_with_rel(const Cell& cell, std::size_t i, Rel rel) {
    std::vector<LinConstraint> cs = cell.constraints;
    cs[i].rel = rel;
    return class_of_cell(make_cell(cell.dim, std::move(cs)));
}

// Drop coordinate `var` using the equality row `eq` (eq.coeffs[var] != 0);
// the projection is a definable bijection on the cell.
Cell eliminate_equality(const Cell& cell, const LinConstraint& eq, int var) {
    const int dim = cell.dim;
    Rat av(eq.coeffs[var]);
    std::vector<LinConstraint> out;
    for (const auto& k : cell.constraints) {
        if (k == eq) continue;
        std::vector<Rat> a;
        a.reserve(dim - 1);
        Rat kv(k.coeffs[var]);
        Rat cst = k.constant - kv * eq.constant / av;
        for (int j = 0; j < dim; ++j) {
            if (j == var) continue;
            a.push_back(Rat(k.coeffs[j]) - kv * Rat(eq.coeffs[j]) / av);
        }
        out.push_back(constraint_from_rational(a, cst, k.rel));
    }
    return make_cell(dim - 1, std::move(out));
}

RingClass class_of_cell(const Cell& cell) {
    if (is_empty_Q(cell)) return RingClass{};
    if (cell.dim == 0) return ring_const(1);

    // split a non-strict inequality into its strict and equality parts
    for (std::size_t i = 0; i < cell.constraints.size(); ++i) {
        if (cell.constraints[i].rel == Rel::le)
            return add(class_with_rel(cell, i, Rel::lt), class_with_rel(cell, i, Rel::eq));
    }

    // use an equality to drop a coordinate (singleton fibers, factor 1)
    for (const auto& k : cell.constraints) {
        if (k.rel != Rel::eq) continue;
        for (int var = cell.dim - 1; var >= 0; --var) {
            if (k.coeffs[var] == 0) continue;
            return class_of_cell(eliminate_equality(cell, k, var));
        }
    }

    // all strict: eliminate the last coordinate; the fiber over the exact
    // projection is uniformly an open interval, half-line, or line
    const int var = cell.dim - 1;
    bool has_upper = false, has_lower = false;
    std::vector<linalg::IneqRow> rows;
    for (const auto& k : cell.constraints) {
        linalg::IneqRow row;
        row.a.assign(cell.dim, Rat(0));
        for (int j = 0; j < cell.dim; ++j) row.a[j] = Rat(k.coeffs[j]);
        row.c = k.constant;
        row.strict = true;
        if (k.coeffs[var] > 0) has_upper = true;
        if (k.coeffs[var] < 0) has_lower = true;
        rows.push_back(std::move(row));
    }
    RingClass factor = has_upper && has_lower ? ring_const(-1)
                       : has_upper || has_lower
                           ? ring_S()
                           : add(mul(ring_const(2), ring_S()), ring_const(1));

    auto projected = linalg::fm_eliminate(rows, var);
    std::vector<LinConstraint> base;
    for (const auto& row : projected) {
        std::vector<Rat> a(row.a.begin(), row.a.begin() + var);
        base.push_back(constraint_from_rational(a, row.c, Rel::lt));
    }
    return mul(factor, class_of_cell(make_cell(cell.dim - 1, std::move(base))));
}

}  // namespace

RingClass class_of(const GroupSpec& g, const SemiSet& s) {
    if (!g.divisible()) throw NonDivisibleGroup("class_of is defined over Q only");
    RingClass total;
    for (const auto& cell : disjointify(s).cells) total = add(total, class_of_cell(cell));
    return total;
}

RingClass class_of(const GroupSpec& g, const TaggedSum& s) {
    RingClass total;
    for (const auto& comp : s.components) total = add(total, class_of(g, comp.set));
    return total;
}

std::string to_string(const RingClass& x) {
    std::ostringstream os;
    os << "(" << x.s_coeff << ", " << x.constant << ")";
    return os.str();
}

}  // namespace oag
