// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/sets.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "oag/errors.hpp"

namespace oag {

namespace {

int cmp_int(const Int& a, const Int& b) { return a < b ? -1 : (b < a ? 1 : 0); }
int cmp_rat(const Rat& a, const Rat& b) { return a < b ? -1 : (b < a ? 1 : 0); }

int cmp_constraint(const LinConstraint& a, const LinConstraint& b) {
    if (a.rel != b.rel) return static_cast<int>(a.rel) < static_cast<int>(b.rel) ? -1 : 1;
    for (std::size_t i = 0; i < std::min(a.coeffs.size(), b.coeffs.size()); ++i)
        if (int c = cmp_int(a.coeffs[i], b.coeffs[i])) return c;
    if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() < b.coeffs.size() ? -1 : 1;
    return cmp_rat(a.constant, b.constant);
}

bool constraint_less(const LinConstraint& a, const LinConstraint& b) { return cmp_constraint(a, b) < 0; }

int cmp_cell(const Cell& a, const Cell& b) {
    if (a.dim != b.dim) return a.dim < b.dim ? -1 : 1;
    for (std::size_t i = 0; i < std::min(a.constraints.size(), b.constraints.size()); ++i)
        if (int c = cmp_constraint(a.constraints[i], b.constraints[i])) return c;
    if (a.constraints.size() != b.constraints.size())
        return a.constraints.size() < b.constraints.size() ? -1 : 1;
    return 0;
}

enum class NormKind { kept, trivially_true, trivially_false };

NormKind normalize_constraint(LinConstraint& c) {
    // clear the constant's denominator, then divide through by the common gcd
    Int den = denominator(c.constant);
    Int num = numerator(c.constant);
    if (den != 1) {
        for (auto& v : c.coeffs) v *= den;
    }
    Int g = 0;
    for (const auto& v : c.coeffs) g = gcd(g, v);
    if (g == 0) {
        // variable-free: 0 REL constant
        bool holds = c.rel == Rel::lt   ? Rat(0) < c.constant
                     : c.rel == Rel::le ? Rat(0) <= c.constant
                                        : c.constant == 0;
        return holds ? NormKind::trivially_true : NormKind::trivially_false;
    }
    g = gcd(g, abs(num));
    if (g > 1) {
        for (auto& v : c.coeffs) v /= g;
        num /= g;
    }
    c.constant = Rat(num);
    if (c.rel == Rel::eq) {
        for (const auto& v : c.coeffs) {
            if (v == 0) continue;
            if (v < 0) {
                for (auto& w : c.coeffs) w = -w;
                c.constant = -c.constant;
            }
            break;
        }
    }
    return NormKind::kept;
}

struct EmptinessCache {
    std::mutex mu;
    std::unordered_map<std::string, bool> map;
    bool lookup(const std::string& key, bool& out) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = map.find(key);
        if (it == map.end()) return false;
        out = it->second;
        return true;
    }
    void store(const std::string& key, bool v) {
        std::lock_guard<std::mutex> lock(mu);
        if (map.size() < (1u << 22)) map.emplace(key, v);
    }
};

EmptinessCache& q_cache() {
    static EmptinessCache c;
    return c;
}
EmptinessCache& g_cache() {
    static EmptinessCache c;
    return c;
}

std::string cell_key(const Cell& c) {
    std::ostringstream os;
    os << c.dim << ";";
    for (const auto& k : c.constraints) {
        os << static_cast<int>(k.rel) << ":";
        for (const auto& v : k.coeffs) os << v << ",";
        os << rat_to_string(k.constant) << ";";
    }
    return os.str();
}

}  // namespace

LinConstraint make_constraint(std::vector<Int> coeffs, Rat constant, Rel rel) {
    return LinConstraint{std::move(coeffs), std::move(constant), rel};
}

LinConstraint constraint_from_rational(const std::vector<Rat>& coeffs, Rat constant, Rel rel) {
    Int scale = 1;
    for (const auto& v : coeffs) scale = lcm(scale, denominator(v));
    std::vector<Int> icoeffs(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) icoeffs[i] = numerator(Rat(coeffs[i] * scale));
    return make_constraint(std::move(icoeffs), constant * scale, rel);
}

Cell empty_cell(int dim) {
    LinConstraint marker{std::vector<Int>(dim, Int(0)), Rat(0), Rel::lt};
    return Cell{dim, {std::move(marker)}};
}

bool cell_marked_empty(const Cell& c) {
    return c.constraints.size() == 1 && c.constraints[0].rel == Rel::lt &&
           c.constraints[0].constant == 0 &&
           std::all_of(c.constraints[0].coeffs.begin(), c.constraints[0].coeffs.end(),
                       [](const Int& v) { return v == 0; });
}

Cell make_cell(int dim, std::vector<LinConstraint> constraints) {
    std::vector<LinConstraint> kept;
    for (auto& c : constraints) {
        if (static_cast<int>(c.coeffs.size()) != dim) throw DimMismatch("constraint arity mismatch");
        switch (normalize_constraint(c)) {
            case NormKind::trivially_true: break;
            case NormKind::trivially_false: return empty_cell(dim);
            case NormKind::kept: kept.push_back(std::move(c)); break;
        }
    }
    std::sort(kept.begin(), kept.end(), constraint_less);
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return Cell{dim, std::move(kept)};
}

SemiSet make_semiset(int dim, std::vector<Cell> cells) {
    std::vector<Cell> kept;
    for (auto& c : cells) {
        if (c.dim != dim) throw DimMismatch("cell dimension mismatch");
        if (!cell_marked_empty(c)) kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end(), [](const Cell& a, const Cell& b) { return cmp_cell(a, b) < 0; });
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return SemiSet{dim, std::move(kept)};
}

SemiSet point_space() { return SemiSet{0, {Cell{0, {}}}}; }

SemiSet singleton(const std::vector<Rat>& p) {
    int dim = static_cast<int>(p.size());
    std::vector<LinConstraint> cs;
    for (int i = 0; i < dim; ++i) {
        std::vector<Int> a(dim, Int(0));
        a[i] = 1;
        cs.push_back(make_constraint(std::move(a), p[i], Rel::eq));
    }
    return make_semiset(dim, {make_cell(dim, std::move(cs))});
}

SemiSet interval(const Bound& lo, const Bound& hi) {
    if (lo && hi && *lo >= *hi) throw BadBounds("interval: lo >= hi");
    std::vector<LinConstraint> cs;
    if (lo) cs.push_back(make_constraint({Int(-1)}, -*lo, Rel::lt));
    if (hi) cs.push_back(make_constraint({Int(1)}, *hi, Rel::lt));
    return make_semiset(1, {make_cell(1, std::move(cs))});
}

const SemiSet* TaggedSum::find(const std::string& label) const {
    for (const auto& c : components)
        if (c.label == label) return &c.set;
    return nullptr;
}

TaggedSum make_sum(std::vector<TaggedComponent> components) {
    for (std::size_t i = 0; i < components.size(); ++i)
        for (std::size_t j = i + 1; j < components.size(); ++j)
            if (components[i].label == components[j].label)
                throw Error("duplicate component label: " + components[i].label);
    return TaggedSum{std::move(components)};
}

// --- boolean structure ------------------------------------------------------

Cell intersect(const Cell& a, const Cell& b) {
    if (a.dim != b.dim) throw DimMismatch("intersect: cell dims differ");
    std::vector<LinConstraint> cs = a.constraints;
    cs.insert(cs.end(), b.constraints.begin(), b.constraints.end());
    if (cell_marked_empty(a) || cell_marked_empty(b)) return empty_cell(a.dim);
    return make_cell(a.dim, std::move(cs));
}

SemiSet intersect(const SemiSet& a, const SemiSet& b) {
    if (a.dim != b.dim) throw DimMismatch("intersect: dims differ");
    std::vector<Cell> cells;
    for (const auto& ca : a.cells)
        for (const auto& cb : b.cells) {
            Cell c = intersect(ca, cb);
            if (!is_empty_Q(c)) cells.push_back(std::move(c));
        }
    return make_semiset(a.dim, std::move(cells));
}

SemiSet union_(const SemiSet& a, const SemiSet& b) {
    if (a.dim != b.dim) throw DimMismatch("union: dims differ");
    std::vector<Cell> cells = a.cells;
    cells.insert(cells.end(), b.cells.begin(), b.cells.end());
    return make_semiset(a.dim, std::move(cells));
}

SemiSet product(const SemiSet& a, const SemiSet& b) {
    int dim = a.dim + b.dim;
    std::vector<Cell> cells;
    for (const auto& ca : a.cells)
        for (const auto& cb : b.cells) {
            std::vector<LinConstraint> cs;
            for (const auto& k : ca.constraints) {
                std::vector<Int> coeffs = k.coeffs;
                coeffs.resize(dim, Int(0));
                cs.push_back(LinConstraint{std::move(coeffs), k.constant, k.rel});
            }
            for (const auto& k : cb.constraints) {
                std::vector<Int> coeffs(dim, Int(0));
                for (int j = 0; j < b.dim; ++j) coeffs[a.dim + j] = k.coeffs[j];
                cs.push_back(LinConstraint{std::move(coeffs), k.constant, k.rel});
            }
            cells.push_back(make_cell(dim, std::move(cs)));
        }
    return make_semiset(dim, std::move(cells));
}

namespace {

// Complement pieces of a single constraint.
std::vector<LinConstraint> negate_constraint(const LinConstraint& c) {
    std::vector<Int> neg(c.coeffs.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coeffs[i];
    switch (c.rel) {
        case Rel::lt: return {LinConstraint{neg, -c.constant, Rel::le}};
        case Rel::le: return {LinConstraint{neg, -c.constant, Rel::lt}};
        case Rel::eq:
            return {LinConstraint{c.coeffs, c.constant, Rel::lt},
                    LinConstraint{neg, -c.constant, Rel::lt}};
    }
    return {};
}

// f minus sub as a list of pairwise disjoint cells.
std::vector<Cell> subtract_cell(const Cell& f, const Cell& sub) {
    if (cell_marked_empty(f)) return {};
    if (cell_marked_empty(sub) || is_empty_Q(intersect(f, sub))) return {f};
    std::vector<Cell> out;
    std::vector<LinConstraint> carried = f.constraints;
    for (const auto& k : sub.constraints) {
        for (const auto& nc : negate_constraint(k)) {
            std::vector<LinConstraint> cs = carried;
            cs.push_back(nc);
            Cell piece = make_cell(f.dim, std::move(cs));
            if (!is_empty_Q(piece)) out.push_back(std::move(piece));
        }
        carried.push_back(k);
        Cell rest = make_cell(f.dim, carried);
        if (cell_marked_empty(rest) || is_empty_Q(rest)) break;
        carried = rest.constraints;
    }
    return out;
}

}  // namespace

SemiSet difference(const SemiSet& a, const SemiSet& b) {
    if (a.dim != b.dim) throw DimMismatch("difference: dims differ");
    std::vector<Cell> frags;
    for (const auto& c : a.cells)
        if (!is_empty_Q(c)) frags.push_back(c);
    for (const auto& sub : b.cells) {
        std::vector<Cell> next;
        for (const auto& f : frags) {
            auto pieces = subtract_cell(f, sub);
            next.insert(next.end(), pieces.begin(), pieces.end());
        }
        frags = std::move(next);
    }
    return make_semiset(a.dim, std::move(frags));
}

SemiSet disjointify(const SemiSet& s) {
    std::vector<Cell> out;
    for (const auto& c : s.cells) {
        if (is_empty_Q(c)) continue;
        std::vector<Cell> frags = {c};
        for (const auto& prev : out) {
            std::vector<Cell> next;
            for (const auto& f : frags) {
                auto pieces = subtract_cell(f, prev);
                next.insert(next.end(), pieces.begin(), pieces.end());
            }
            frags = std::move(next);
        }
        out.insert(out.end(), frags.begin(), frags.end());
    }
    return make_semiset(s.dim, std::move(out));
}

// --- decision procedures ----------------------------------------------------

namespace {

// Gaussian reduction of a cell's equality constraints with back-substitution
// data for the inequalities.
struct EqReduction {
    bool consistent = true;
    linalg::QMatrix rows;                    // rref'd, width dim+1
    std::vector<std::pair<int, int>> pivots; // (row, var)
    std::vector<int> free_vars;              // ascending
    std::vector<int> var_to_free;            // var -> index into free_vars or -1
};

EqReduction reduce_equalities(const Cell& c) {
    EqReduction red;
    for (const auto& k : c.constraints) {
        if (k.rel != Rel::eq) continue;
        linalg::QRow row(c.dim + 1);
        for (int j = 0; j < c.dim; ++j) row[j] = Rat(k.coeffs[j]);
        row[c.dim] = k.constant;
        red.rows.push_back(std::move(row));
    }
    red.pivots = linalg::rref(red.rows, c.dim);
    for (const auto& row : red.rows) {
        bool zero = true;
        for (int j = 0; j < c.dim; ++j)
            if (row[j] != 0) zero = false;
        if (zero && row[c.dim] != 0) red.consistent = false;
    }
    std::vector<bool> is_pivot(c.dim, false);
    for (auto [r, v] : red.pivots) is_pivot[v] = true;
    red.var_to_free.assign(c.dim, -1);
    for (int j = 0; j < c.dim; ++j)
        if (!is_pivot[j]) {
            red.var_to_free[j] = static_cast<int>(red.free_vars.size());
            red.free_vars.push_back(j);
        }
    return red;
}

// Rewrites a.x REL c over the free variables of red.
linalg::IneqRow substitute_into_free(const EqReduction& red, int dim, const linalg::QRow& a,
                                     const Rat& c, bool strict) {
    linalg::IneqRow out;
    out.a.assign(red.free_vars.size(), Rat(0));
    out.c = c;
    out.strict = strict;
    for (std::size_t fi = 0; fi < red.free_vars.size(); ++fi) out.a[fi] = a[red.free_vars[fi]];
    for (auto [r, v] : red.pivots) {
        if (a[v] == 0) continue;
        // x_v = rows[r][dim] - sum_j rows[r][j] x_j over free j
        out.c -= a[v] * red.rows[r][dim];
        for (std::size_t fi = 0; fi < red.free_vars.size(); ++fi)
            out.a[fi] -= a[v] * red.rows[r][red.free_vars[fi]];
    }
    return out;
}

std::vector<linalg::IneqRow> reduced_inequalities(const Cell& c, const EqReduction& red) {
    std::vector<linalg::IneqRow> rows;
    for (const auto& k : c.constraints) {
        if (k.rel == Rel::eq) continue;
        linalg::QRow a(c.dim);
        for (int j = 0; j < c.dim; ++j) a[j] = Rat(k.coeffs[j]);
        rows.push_back(substitute_into_free(red, c.dim, a, k.constant, k.rel == Rel::lt));
    }
    return rows;
}

bool is_empty_Q_impl(const Cell& c, const std::vector<int>* free_order) {
    if (cell_marked_empty(c)) return true;
    EqReduction red = reduce_equalities(c);
    if (!red.consistent) return true;
    auto rows = reduced_inequalities(c, red);
    return !linalg::fm_feasible(std::move(rows), static_cast<int>(red.free_vars.size()), free_order);
}

}  // namespace

bool is_empty_Q(const Cell& c) {
    std::string key = cell_key(c);
    bool cached;
    if (q_cache().lookup(key, cached)) return cached;
    bool result = is_empty_Q_impl(c, nullptr);
    q_cache().store(key, result);
    return result;
}

bool is_empty_Q(const SemiSet& s) {
    return std::all_of(s.cells.begin(), s.cells.end(), [](const Cell& c) { return is_empty_Q(c); });
}

bool is_empty_Q_order(const Cell& c, const std::vector<int>& free_order) {
    return is_empty_Q_impl(c, &free_order);
}

Cell hull_strengthen(const Cell& c) {
    std::vector<LinConstraint> cs = c.constraints;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].rel != Rel::le) continue;
        std::vector<LinConstraint> probe = cs;
        probe[i].rel = Rel::lt;
        if (is_empty_Q(make_cell(c.dim, std::move(probe)))) cs[i].rel = Rel::eq;
    }
    return make_cell(c.dim, std::move(cs));
}

namespace {

struct CoordBounds {
    std::optional<Rat> lo, hi;
    bool lo_strict = false, hi_strict = false;
    std::optional<Rat> pinned;
    bool infeasible = false;

    void add_lower(const Rat& v, bool strict) {
        if (!lo || v > *lo || (v == *lo && strict)) {
            lo = v;
            lo_strict = strict;
        }
    }
    void add_upper(const Rat& v, bool strict) {
        if (!hi || v < *hi || (v == *hi && strict)) {
            hi = v;
            hi_strict = strict;
        }
    }
    void pin(const Rat& v) {
        if (pinned && *pinned != v) infeasible = true;
        pinned = v;
    }
};

// Per-coordinate bounds for Z-cells; throws on genuinely multi-variable
// constraints, which would need congruence reasoning.
std::vector<CoordBounds> discrete_bounds(const Cell& c) {
    std::vector<CoordBounds> bounds(c.dim);
    for (const auto& k : c.constraints) {
        int var = -1, nz = 0;
        for (int j = 0; j < c.dim; ++j)
            if (k.coeffs[j] != 0) {
                var = j;
                ++nz;
            }
        if (nz != 1) throw UnsupportedDiscreteCell("discrete cell with multi-variable constraint");
        Rat v = k.constant / Rat(k.coeffs[var]);
        bool positive = k.coeffs[var] > 0;
        switch (k.rel) {
            case Rel::eq: bounds[var].pin(v); break;
            case Rel::lt:
                positive ? bounds[var].add_upper(v, true) : bounds[var].add_lower(v, true);
                break;
            case Rel::le:
                positive ? bounds[var].add_upper(v, false) : bounds[var].add_lower(v, false);
                break;
        }
    }
    return bounds;
}

// Integer interval [lo, hi] carved out by one coordinate's bounds.
std::pair<std::optional<Int>, std::optional<Int>> integer_range(const CoordBounds& b) {
    std::optional<Int> lo, hi;
    if (b.lo) lo = b.lo_strict ? rat_floor(*b.lo) + 1 : rat_ceil(*b.lo);
    if (b.hi) hi = b.hi_strict ? rat_ceil(*b.hi) - 1 : rat_floor(*b.hi);
    return {lo, hi};
}

bool discrete_feasible(const Cell& c) {
    if (cell_marked_empty(c)) return false;
    auto bounds = discrete_bounds(c);
    for (const auto& b : bounds) {
        if (b.infeasible) return false;
        if (b.pinned) {
            if (!rat_is_integer(*b.pinned)) return false;
            if (b.lo && (b.lo_strict ? !(*b.lo < *b.pinned) : !(*b.lo <= *b.pinned))) return false;
            if (b.hi && (b.hi_strict ? !(*b.pinned < *b.hi) : !(*b.pinned <= *b.hi))) return false;
            continue;
        }
        auto [lo, hi] = integer_range(b);
        if (lo && hi && *lo > *hi) return false;
    }
    return true;
}

}  // namespace

std::optional<std::vector<Rat>> hull_G_witness(const GroupSpec& g, const Cell& c) {
    if (cell_marked_empty(c) || is_empty_Q(c)) return std::nullopt;
    Cell ch = hull_strengthen(c);

    // integer equality system A x = b
    std::vector<std::vector<Int>> A;
    std::vector<Int> b;
    for (const auto& k : ch.constraints) {
        if (k.rel != Rel::eq) continue;
        A.push_back(k.coeffs);
        assert(rat_is_integer(k.constant));
        b.push_back(numerator(k.constant));
    }
    const int n = c.dim;
    if (A.empty()) return std::vector<Rat>(n, Rat(0));

    auto snf = linalg::smith_normal_form(A);
    const int m = static_cast<int>(A.size());
    std::vector<Int> ub(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) ub[i] += snf.U[i][j] * b[j];
    for (int i = snf.rank; i < m; ++i)
        if (ub[i] != 0) return std::nullopt;  // inconsistent over Q

    // smallest scale s with d_i | s*ub_i; G-solvable iff s factors over the
    // inverted primes
    Int scale = 1;
    for (int i = 0; i < snf.rank; ++i) {
        Int e = snf.d[i] / gcd(snf.d[i], ub[i] == 0 ? snf.d[i] : abs(ub[i]));
        scale = lcm(scale, e);
    }
    if (g.kind() != GroupKind::rationals) {
        Int rest = scale;
        for (const Int& p : g.inverted_primes())
            while (rest % p == 0) rest /= p;
        if (rest != 1) return std::nullopt;
    }

    std::vector<Int> z(n, 0);
    for (int i = 0; i < snf.rank && i < n; ++i) z[i] = scale * ub[i] / snf.d[i];
    std::vector<Rat> x(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        Int yj = 0;
        for (int k2 = 0; k2 < n; ++k2) yj += snf.V[j][k2] * z[k2];
        x[j] = Rat(yj, scale);
    }
    for (int i = 0; i < m; ++i) {
        Rat acc = 0;
        for (int j = 0; j < n; ++j) acc += Rat(A[i][j]) * x[j];
        assert(acc == Rat(b[i]));
        (void)acc;
    }
    return x;
}

bool has_G_point(const GroupSpec& g, const Cell& c) {
    if (cell_marked_empty(c)) return false;
    if (g.kind() == GroupKind::rationals) return !is_empty_Q(c);
    if (g.kind() == GroupKind::integers) return discrete_feasible(c);

    std::string key = g.to_string() + "|" + cell_key(c);
    bool cached;
    if (g_cache().lookup(key, cached)) return cached;
    bool result = !is_empty_Q(c) && hull_G_witness(g, c).has_value();
    g_cache().store(key, result);
    return result;
}

bool has_G_point(const GroupSpec& g, const SemiSet& s) {
    return std::any_of(s.cells.begin(), s.cells.end(),
                       [&](const Cell& c) { return has_G_point(g, c); });
}

bool subset_G(const GroupSpec& g, const SemiSet& a, const SemiSet& b) {
    if (a.dim != b.dim) throw DimMismatch("subset_G: dims differ");
    return !has_G_point(g, difference(a, b));
}

bool equals_G(const GroupSpec& g, const SemiSet& a, const SemiSet& b) {
    if (a == b) return true;
    return subset_G(g, a, b) && subset_G(g, b, a);
}

bool disjoint_G(const GroupSpec& g, const SemiSet& a, const SemiSet& b) {
    if (a.dim != b.dim) throw DimMismatch("disjoint_G: dims differ");
    for (const auto& ca : a.cells)
        for (const auto& cb : b.cells)
            if (has_G_point(g, intersect(ca, cb))) return false;
    return true;
}

namespace {

bool cell_satisfied(const Cell& c, const std::vector<Rat>& pt) {
    for (const auto& k : c.constraints) {
        Rat acc = 0;
        for (int j = 0; j < c.dim; ++j) acc += Rat(k.coeffs[j]) * pt[j];
        bool ok = k.rel == Rel::lt ? acc < k.constant : k.rel == Rel::le ? acc <= k.constant : acc == k.constant;
        if (!ok) return false;
    }
    return true;
}

}  // namespace

bool member(const GroupSpec& g, const SemiSet& s, const std::vector<Rat>& pt) {
    if (static_cast<int>(pt.size()) != s.dim) throw DimMismatch("member: point arity mismatch");
    for (const auto& v : pt)
        if (!g.contains(v)) return false;
    for (const auto& c : s.cells)
        if (!cell_marked_empty(c) && cell_satisfied(c, pt)) return true;
    return false;
}

bool sum_member(const GroupSpec& g, const TaggedSum& ts, const TaggedPoint& p) {
    const SemiSet* set = ts.find(p.label);
    if (!set) return false;
    return member(g, *set, p.coords);
}

bool cell_contains_point(const Cell& c, const std::vector<Rat>& pt) {
    if (static_cast<int>(pt.size()) != c.dim) throw DimMismatch("cell_contains_point: arity");
    if (cell_marked_empty(c)) return false;
    return cell_satisfied(c, pt);
}

namespace {

std::optional<std::vector<Rat>> sample_cell_discrete(const Cell& c, Rng& rng, const SampleConfig& cfg) {
    auto bounds = discrete_bounds(c);
    std::vector<Rat> pt(c.dim);
    for (int j = 0; j < c.dim; ++j) {
        const auto& b = bounds[j];
        if (b.infeasible) return std::nullopt;
        if (b.pinned) {
            if (!rat_is_integer(*b.pinned)) return std::nullopt;
            pt[j] = *b.pinned;
            continue;
        }
        auto [lo, hi] = integer_range(b);
        Int a = lo ? *lo : (hi ? Int(*hi - cfg.window + 1) : Int(-cfg.window / 2));
        Int z = hi ? *hi : Int(a + cfg.window - 1);
        if (a > z) return std::nullopt;
        pt[j] = Rat(rng_int_in(rng, a, z));
    }
    return cell_satisfied(c, pt) ? std::optional(pt) : std::nullopt;
}

std::optional<std::vector<Rat>> sample_cell_dense(const GroupSpec& g, const Cell& cell, Rng& rng,
                                                  const SampleConfig& cfg) {
    Cell ch = hull_strengthen(cell);
    EqReduction red = reduce_equalities(ch);
    if (!red.consistent) return std::nullopt;
    auto rows = reduced_inequalities(ch, red);
    const int nfree = static_cast<int>(red.free_vars.size());

    std::vector<Rat> free_vals(nfree);
    for (int fi = 0; fi < nfree; ++fi) {
        auto proj = rows;
        for (int fj = nfree - 1; fj > fi; --fj) proj = linalg::fm_eliminate(proj, fj);
        CoordBounds b;
        for (const auto& row : proj) {
            if (row.a[fi] == 0) {
                bool ok = row.strict ? Rat(0) < row.c : Rat(0) <= row.c;
                if (!ok) return std::nullopt;
                continue;
            }
            Rat v = row.c / row.a[fi];
            row.a[fi] > 0 ? b.add_upper(v, row.strict) : b.add_lower(v, row.strict);
        }
        Rat v;
        if (b.lo && b.hi && *b.lo == *b.hi) {
            if (b.lo_strict || b.hi_strict) return std::nullopt;
            v = *b.lo;
            if (!g.contains(v)) return std::nullopt;
        } else {
            try {
                v = sample_element(g, b.lo, b.hi, rng, cfg);
            } catch (const EmptyRegion&) {
                return std::nullopt;
            }
        }
        free_vals[fi] = v;
        for (auto& row : rows) {
            row.c -= row.a[fi] * v;
            row.a[fi] = 0;
        }
    }

    std::vector<Rat> pt(ch.dim, Rat(0));
    for (int fi = 0; fi < nfree; ++fi) pt[red.free_vars[fi]] = free_vals[fi];
    for (auto [r, v] : red.pivots) {
        Rat val = red.rows[r][ch.dim];
        for (int fi = 0; fi < nfree; ++fi) val -= red.rows[r][red.free_vars[fi]] * free_vals[fi];
        pt[v] = val;
    }
    for (const auto& v : pt)
        if (!g.contains(v)) return std::nullopt;
    if (!cell_satisfied(cell, pt)) return std::nullopt;
    return pt;
}

}  // namespace

std::vector<Rat> sample_point(const GroupSpec& g, const SemiSet& s, Rng& rng, const SampleConfig& cfg) {
    std::vector<const Cell*> candidates;
    for (const auto& c : s.cells)
        if (has_G_point(g, c)) candidates.push_back(&c);
    if (candidates.empty()) throw SamplingExhausted("sample_point: no nonempty cell");
    for (int attempt = 0; attempt < cfg.retries; ++attempt) {
        const Cell& cell = *candidates[rng_below(rng, candidates.size())];
        if (cell.dim == 0) return {};
        auto pt = g.discrete() ? sample_cell_discrete(cell, rng, cfg)
                               : sample_cell_dense(g, cell, rng, cfg);
        if (pt) return *pt;
    }
    throw SamplingExhausted("sample_point: retries exhausted");
}

std::optional<std::vector<Rat>> find_G_point(const GroupSpec& g, const SemiSet& s, std::uint64_t seed) {
    try {
        Rng rng(seed);
        SampleConfig cfg;
        cfg.retries = 200;
        return sample_point(g, s, rng, cfg);
    } catch (const SamplingExhausted&) {
    } catch (const UnsupportedDiscreteCell&) {
    }
    if (!g.discrete()) {
        for (const auto& c : s.cells) {
            if (!has_G_point(g, c)) continue;
            auto w = hull_G_witness(g, c);
            if (w && member(g, SemiSet{s.dim, {c}}, *w)) return w;
        }
    }
    return std::nullopt;
}

// --- printing ----------------------------------------------------------------

namespace {

void print_linear(std::ostream& os, const std::vector<Int>& coeffs,
                  const std::vector<std::string>& vars) {
    bool first = true;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        Int a = coeffs[j];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int mag = abs(a);
        if (mag != 1) os << mag << "*";
        os << vars[j];
        first = false;
    }
    if (first) os << "0";
}

}  // namespace

std::string to_string(const Cell& c) {
    std::vector<std::string> vars;
    for (int j = 0; j < c.dim; ++j) vars.push_back("x" + std::to_string(j + 1));
    std::ostringstream os;
    os << "{ (";
    for (int j = 0; j < c.dim; ++j) os << (j ? ", " : "") << vars[j];
    os << ") :";
    if (c.constraints.empty()) os << " true";
    for (std::size_t i = 0; i < c.constraints.size(); ++i) {
        const auto& k = c.constraints[i];
        os << (i ? ", " : " ");
        print_linear(os, k.coeffs, vars);
        os << (k.rel == Rel::lt ? " < " : k.rel == Rel::le ? " <= " : " = ");
        os << rat_to_string(k.constant);
    }
    os << " }";
    return os.str();
}

std::string to_string(const SemiSet& s) {
    if (s.cells.empty()) return "{ dim " + std::to_string(s.dim) + " : empty }";
    std::ostringstream os;
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        if (i) os << " | ";
        os << to_string(s.cells[i]);
    }
    return os.str();
}

}  // namespace oag
