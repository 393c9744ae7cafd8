// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace oag::linalg {

std::vector<std::pair<int, int>> rref(QMatrix& rows, int ncols) {
    std::vector<std::pair<int, int>> pivots;
    int next_row = 0;
    const int nrows = static_cast<int>(rows.size());
    for (int col = 0; col < ncols && next_row < nrows; ++col) {
        int pr = -1;
        for (int r = next_row; r < nrows; ++r)
            if (rows[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(rows[next_row], rows[pr]);
        Rat inv = rows[next_row][col];
        for (auto& v : rows[next_row]) v /= inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == next_row || rows[r][col] == 0) continue;
            Rat f = rows[r][col];
            for (std::size_t k = 0; k < rows[r].size(); ++k) rows[r][k] -= f * rows[next_row][k];
        }
        pivots.emplace_back(next_row, col);
        ++next_row;
    }
    return pivots;
}

int rank(QMatrix rows, int ncols) { return static_cast<int>(rref(rows, ncols).size()); }

QMatrix nullspace(QMatrix rows, int ncols) {
    auto pivots = rref(rows, ncols);
    std::vector<int> pivot_col(ncols, -1);
    for (auto [r, c] : pivots) pivot_col[c] = r;
    QMatrix basis;
    for (int free = 0; free < ncols; ++free) {
        if (pivot_col[free] >= 0) continue;
        QRow v(ncols, Rat(0));
        v[free] = 1;
        for (auto [r, c] : pivots) v[c] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<IneqRow> fm_eliminate(const std::vector<IneqRow>& rows, int var) {
    std::vector<const IneqRow*> lowers, uppers;
    std::vector<IneqRow> out;
    for (const auto& row : rows) {
        const Rat& coef = row.a[var];
        if (coef == 0)
            out.push_back(row);
        else if (coef > 0)
            uppers.push_back(&row);
        else
            lowers.push_back(&row);
    }
    for (const IneqRow* lo : lowers) {
        for (const IneqRow* up : uppers) {
            Rat p = -lo->a[var];  // > 0
            Rat q = up->a[var];   // > 0
            IneqRow combo;
            combo.a.resize(lo->a.size());
            for (std::size_t k = 0; k < combo.a.size(); ++k)
                combo.a[k] = q * lo->a[k] + p * up->a[k];
            combo.c = q * lo->c + p * up->c;
            combo.strict = lo->strict || up->strict;
            assert(combo.a[var] == 0);
            out.push_back(std::move(combo));
        }
    }
    return out;
}

namespace {

// Returns false when a variable-free row is violated; drops satisfied ones.
bool prune_constant_rows(std::vector<IneqRow>& rows) {
    std::vector<IneqRow> kept;
    for (auto& row : rows) {
        bool constant = std::all_of(row.a.begin(), row.a.end(), [](const Rat& v) { return v == 0; });
        if (!constant) {
            kept.push_back(std::move(row));
            continue;
        }
        if (row.strict ? !(Rat(0) < row.c) : !(Rat(0) <= row.c)) return false;
    }
    rows = std::move(kept);
    return true;
}

}  // namespace

bool fm_feasible(std::vector<IneqRow> rows, int nvars, const std::vector<int>* order) {
    std::vector<int> elim;
    if (order) {
        elim = *order;
    } else {
        for (int v = nvars - 1; v >= 0; --v) elim.push_back(v);
    }
    if (!prune_constant_rows(rows)) return false;
    for (int var : elim) {
        rows = fm_eliminate(rows, var);
        if (!prune_constant_rows(rows)) return false;
    }
    return true;
}

namespace {

using IMatrix = std::vector<std::vector<Int>>;

IMatrix identity(int n) {
    IMatrix m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void row_op(IMatrix& a, IMatrix& u, int dst, int src, const Int& f) {
    for (std::size_t k = 0; k < a[dst].size(); ++k) a[dst][k] -= f * a[src][k];
    for (std::size_t k = 0; k < u[dst].size(); ++k) u[dst][k] -= f * u[src][k];
}

void col_op(IMatrix& a, IMatrix& v, int dst, int src, const Int& f) {
    for (auto& row : a) row[dst] -= f * row[src];
    for (auto& row : v) row[dst] -= f * row[src];
}

void swap_rows(IMatrix& a, IMatrix& u, int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
}

void swap_cols(IMatrix& a, IMatrix& v, int i, int j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
}

}  // namespace

SmithForm smith_normal_form(IMatrix A) {
    const int m = static_cast<int>(A.size());
    const int n = m ? static_cast<int>(A[0].size()) : 0;
    SmithForm out;
    out.U = identity(m);
    out.V = identity(n);

    int k = 0;
    while (k < m && k < n) {
        // locate a minimal-magnitude nonzero pivot in the trailing block
        int pi = -1, pj = -1;
        for (int i = k; i < m; ++i)
            for (int j = k; j < n; ++j)
                if (A[i][j] != 0 && (pi < 0 || abs(A[i][j]) < abs(A[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        swap_rows(A, out.U, k, pi);
        swap_cols(A, out.V, k, pj);

        bool clean = true;
        for (int i = k + 1; i < m; ++i) {
            if (A[i][k] == 0) continue;
            Int f = floor_div(A[i][k], A[k][k]);
            if (2 * (A[i][k] - f * A[k][k]) > abs(A[k][k])) ++f;  // symmetric remainder
            row_op(A, out.U, i, k, f);
            if (A[i][k] != 0) clean = false;
        }
        for (int j = k + 1; j < n; ++j) {
            if (A[k][j] == 0) continue;
            Int f = floor_div(A[k][j], A[k][k]);
            if (2 * (A[k][j] - f * A[k][k]) > abs(A[k][k])) ++f;
            col_op(A, out.V, j, k, f);
            if (A[k][j] != 0) clean = false;
        }
        if (!clean) continue;  // pivot shrank; repeat the step
        if (A[k][k] < 0) {
            for (int j = k; j < n; ++j) A[k][j] = -A[k][j];
            for (auto& v : out.U[k]) v = -v;
        }
        out.d.push_back(A[k][k]);
        ++k;
    }
    out.rank = k;
    return out;
}

}  // namespace oag::linalg
