// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oag/kring.hpp"

using namespace oag;

namespace {

const GroupSpec Q = GroupSpec::rationals();

RingClass cls(const SemiSet& s) { return class_of(Q, s); }

SemiSet whole_line() { return interval(std::nullopt, std::nullopt); }

RingClass random_class(Rng& rng) {
    return RingClass{Int(static_cast<long>(rng_below(rng, 21)) - 10),
                     Int(static_cast<long>(rng_below(rng, 21)) - 10)};
}

SemiSet random_1d(Rng& rng) {
    auto endpoint = [&]() {
        return Rat(static_cast<long>(rng_below(rng, 9)) - 4, 1 + static_cast<long>(rng_below(rng, 3)));
    };
    std::vector<Cell> cells;
    int n = 1 + static_cast<int>(rng_below(rng, 3));
    for (int i = 0; i < n; ++i) {
        switch (rng_below(rng, 4)) {
            case 0: {
                Rat a = endpoint();
                cells.push_back(singleton({a}).cells[0]);
                break;
            }
            case 1: {
                Rat a = endpoint();
                cells.push_back(interval(a, std::nullopt).cells[0]);
                break;
            }
            case 2: {
                Rat a = endpoint();
                Rat b = a + 1 + Rat(static_cast<long>(rng_below(rng, 3)));
                cells.push_back(interval(a, b).cells[0]);
                break;
            }
            default: {
                Rat a = endpoint();
                // a closed ray to exercise non-strict splitting
                cells.push_back(make_cell(1, {make_constraint({Int(-1)}, -a, Rel::le)}));
                break;
            }
        }
    }
    return make_semiset(1, std::move(cells));
}

}  // namespace

TEST_CASE("ring arithmetic reduces by S^2 = -S") {
    RingClass S = ring_S();
    CHECK(mul(S, S) == RingClass{-1, 0});
    // (S+1)S = S^2 + S = 0
    CHECK(mul(add(S, ring_const(1)), S) == RingClass{0, 0});
    RingClass x{3, -2};
    CHECK(add(x, ring_const(0)) == x);
    CHECK(add(x, neg(x)) == RingClass{0, 0});
}

TEST_CASE("ring axioms on random triples") {
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        RingClass a = random_class(rng), b = random_class(rng), c = random_class(rng);
        CHECK(mul(a, mul(b, c)) == mul(mul(a, b), c));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        CHECK(mul(a, b) == mul(b, a));
        CHECK(add(mul(ring_S(), ring_S()), ring_S()) == RingClass{0, 0});
    }
}

TEST_CASE("basic classes") {
    CHECK(cls(interval(Rat(0), Rat(1))) == RingClass{0, -1});
    CHECK(cls(interval(Rat(0), std::nullopt)) == ring_S());
    CHECK(cls(singleton({Rat(7)})) == RingClass{0, 1});
    CHECK(cls(make_semiset(1, {empty_cell(1)})) == RingClass{0, 0});
    // (0,inf)^2 ~ -S, matching mul(S, S)
    SemiSet quad = product(interval(Rat(0), std::nullopt), interval(Rat(0), std::nullopt));
    CHECK(cls(quad) == RingClass{-1, 0});
    CHECK(cls(quad) == mul(ring_S(), ring_S()));
    // whole line = ray + point + ray
    CHECK(cls(whole_line()) == RingClass{2, 1});
    // closed interval [0,1] = pt + open + pt
    SemiSet closed = make_semiset(1, {make_cell(1, {make_constraint({Int(-1)}, Rat(0), Rel::le),
                                                    make_constraint({Int(1)}, Rat(1), Rel::le)})});
    CHECK(cls(closed) == RingClass{0, 1});
}

TEST_CASE("euler characteristic and the zero evaluation") {
    CHECK(euler_char(cls(interval(Rat(0), Rat(1)))) == -1);
    CHECK(euler_char(ring_S()) == -1);
    CHECK(hom_zero(ring_S()) == 0);
    CHECK(euler_char(cls(whole_line())) == -1);
    CHECK(hom_zero(cls(whole_line())) == 1);
}

TEST_CASE("classes of planar cells") {
    // open triangle {x>y>0}: -S * ... computed two ways
    Cell tri = make_cell(2, {make_constraint({Int(-1), Int(1)}, Rat(0), Rel::lt),
                             make_constraint({Int(0), Int(-1)}, Rat(0), Rel::lt)});
    CHECK(cls(SemiSet{2, {tri}}) == RingClass{-1, 0});
    // diagonal {x=y} over the whole line has the class of a line
    Cell diag = make_cell(2, {make_constraint({Int(1), Int(-1)}, Rat(0), Rel::eq)});
    CHECK(cls(SemiSet{2, {diag}}) == RingClass{2, 1});
}

TEST_CASE("class_of rejects other groups") {
    CHECK_THROWS_AS(class_of(GroupSpec::integers(), interval(Rat(0), Rat(1))), NonDivisibleGroup);
    CHECK_THROWS_AS(class_of(GroupSpec::parse("Z[1/3]"), interval(Rat(0), Rat(1))),
                    NonDivisibleGroup);
}

TEST_CASE("additivity and multiplicativity on random sets") {
    Rng rng(101);
    for (int i = 0; i < 100; ++i) {
        SemiSet a = random_1d(rng);
        SemiSet b = random_1d(rng);
        SemiSet a_minus_b = difference(a, b);
        SemiSet b_only = intersect(a, b);
        // a = (a \ b) + (a n b), disjointly
        CHECK(cls(a) == add(cls(a_minus_b), cls(b_only)));
        CHECK(cls(product(a, b)) == mul(cls(a), cls(b)));
    }
}

TEST_CASE("partition invariance of the class") {
    Rng rng(77);
    for (int i = 0; i < 50; ++i) {
        SemiSet a = random_1d(rng);
        SemiSet b = random_1d(rng);
        SemiSet u = union_(a, b);
        SemiSet reversed = make_semiset(1, {u.cells.rbegin(), u.cells.rend()});
        CHECK(cls(u) == cls(reversed));
        // a different refinement: (a \ b) + (b \ a) + (a n b)
        RingClass pieces = add(add(cls(difference(a, b)), cls(difference(b, a))),
                               cls(intersect(a, b)));
        CHECK(cls(u) == pieces);
    }
}
