// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "oag/rat.hpp"

namespace oag::linalg {

using QRow = std::vector<Rat>;
using QMatrix = std::vector<QRow>;

// In-place reduced row echelon form over the first `ncols` columns (extra
// columns ride along as right-hand sides). Returns (row, pivot column) pairs.
std::vector<std::pair<int, int>> rref(QMatrix& rows, int ncols);

int rank(QMatrix rows, int ncols);

// Basis of the nullspace of the ncols-wide coefficient matrix.
QMatrix nullspace(QMatrix rows, int ncols);

// One inequality a.x REL c where REL is < (strict) or <= (non-strict).
struct IneqRow {
    QRow a;
    Rat c;
    bool strict = false;
};

// Eliminates variable `var` by Fourier-Motzkin. A combined bound is strict iff
// either parent is strict. Rows not mentioning `var` pass through.
std::vector<IneqRow> fm_eliminate(const std::vector<IneqRow>& rows, int var);

// Rational feasibility of a system of strict/non-strict inequalities; `order`
// optionally fixes the elimination order of the variables.
bool fm_feasible(std::vector<IneqRow> rows, int nvars,
                 const std::vector<int>* order = nullptr);

// Result of diagonalizing an integer matrix: U*A*V = diag(d), with U and V
// unimodular. d holds the `rank` nonzero diagonal entries.
struct SmithForm {
    std::vector<std::vector<Int>> U, V;
    std::vector<Int> d;
    int rank = 0;
};

SmithForm smith_normal_form(std::vector<std::vector<Int>> A);

}  // namespace oag::linalg
