// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "oag/maps.hpp"

namespace oag::dsl {

// Position-carrying parse failure; line/column are 1-based.
struct ParseError : Error {
    int line = 0, column = 0;
    std::string expected, found;

    ParseError(int line_, int col_, std::string expected_, std::string found_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": expected " + expected_ + ", found '" + found_ + "'"),
          line(line_),
          column(col_),
          expected(std::move(expected_)),
          found(std::move(found_)) {}
};

struct NameError : Error {
    int line = 0, column = 0;
    std::string name;

    NameError(int line_, int col_, std::string name_)
        : Error("name error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": undeclared identifier '" + name_ + "'"),
          line(line_),
          column(col_),
          name(std::move(name_)) {}
};

struct SetDecl {
    std::string name;
    std::vector<std::string> vars;
    SemiSet set;

    bool operator==(const SetDecl&) const = default;
};

struct Summand {
    long count = 1;
    std::string name;  // "pt" for the built-in point

    bool operator==(const Summand&) const = default;
};

struct SumDecl {
    std::string name;
    std::vector<Summand> summands;

    bool operator==(const SumDecl&) const = default;
};

struct PieceDecl {
    std::string source_base;
    int source_index = 0;  // 0 when the domain is a plain set
    std::string source_restrict;  // optional set name after '&'
    std::string target_base;      // empty when the codomain target is implied
    int target_index = 0;
    std::vector<std::string> vars;
    AffineMap map;

    bool operator==(const PieceDecl&) const = default;
};

struct MapDecl {
    std::string name;
    std::string dom, cod;
    std::vector<PieceDecl> pieces;
    PiecewiseMap map;  // elaborated

    bool operator==(const MapDecl&) const = default;
};

struct CheckStmt {
    enum class Kind { empty, equal, bijection, klass };
    Kind kind = Kind::empty;
    std::vector<std::string> args;

    bool operator==(const CheckStmt&) const = default;
};

struct DeriveStmt {
    bool operator==(const DeriveStmt&) const = default;
};

using Stmt = std::variant<SetDecl, SumDecl, MapDecl, CheckStmt, DeriveStmt>;

struct Script {
    std::string group_name;
    GroupSpec group = GroupSpec::rationals();
    std::vector<Stmt> stmts;

    const SetDecl* find_set(const std::string& name) const;
    const SumDecl* find_sum(const std::string& name) const;
    const MapDecl* find_map(const std::string& name) const;

    bool operator==(const Script&) const = default;
};

// Throws ParseError / NameError.
Script parse(const std::string& text);

// Canonical rendering; parse(print(s)) is structurally equal to s.
std::string print(const Script& s);

// The tagged sum named by a set or sum declaration (components "name" for a
// set, "name.k" for a sum's expanded instances).
TaggedSum sum_of(const Script& s, const std::string& name);

}  // namespace oag::dsl
