// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/maps.hpp"

#include <algorithm>
#include <cassert>

#include "oag/errors.hpp"
#include "oag/linalg.hpp"

namespace oag {

AffineMap AffineMap::identity(int dim) {
    AffineMap f;
    f.in_dim = f.out_dim = dim;
    f.matrix.assign(dim, std::vector<Rat>(dim, Rat(0)));
    for (int i = 0; i < dim; ++i) f.matrix[i][i] = 1;
    f.offset.assign(dim, Rat(0));
    return f;
}

std::vector<Rat> AffineMap::apply(const std::vector<Rat>& x) const {
    assert(static_cast<int>(x.size()) == in_dim);
    std::vector<Rat> y(out_dim);
    for (int i = 0; i < out_dim; ++i) {
        Rat acc = offset[i];
        for (int j = 0; j < in_dim; ++j) acc += matrix[i][j] * x[j];
        y[i] = acc;
    }
    return y;
}

AffineMap AffineMap::then(const AffineMap& g) const {
    assert(out_dim == g.in_dim);
    AffineMap h;
    h.in_dim = in_dim;
    h.out_dim = g.out_dim;
    h.matrix.assign(h.out_dim, std::vector<Rat>(h.in_dim, Rat(0)));
    h.offset = g.offset;
    for (int i = 0; i < g.out_dim; ++i) {
        for (int j = 0; j < in_dim; ++j)
            for (int k = 0; k < out_dim; ++k) h.matrix[i][j] += g.matrix[i][k] * matrix[k][j];
        for (int k = 0; k < out_dim; ++k) h.offset[i] += g.matrix[i][k] * offset[k];
    }
    return h;
}

bool is_definable(const GroupSpec& g, const AffineMap& f) {
    for (const auto& row : f.matrix)
        for (const auto& v : row)
            if (!g.contains(v)) return false;
    for (const auto& v : f.offset)
        if (!g.contains(v)) return false;
    return true;
}

namespace {

// Direction space of the affine hull: nullspace of the equality coefficients.
linalg::QMatrix hull_directions(const Cell& hulled) {
    linalg::QMatrix rows;
    for (const auto& k : hulled.constraints) {
        if (k.rel != Rel::eq) continue;
        linalg::QRow row(hulled.dim);
        for (int j = 0; j < hulled.dim; ++j) row[j] = Rat(k.coeffs[j]);
        rows.push_back(std::move(row));
    }
    return linalg::nullspace(std::move(rows), hulled.dim);
}

bool injective_on(const AffineMap& f, const linalg::QMatrix& directions) {
    if (directions.empty()) return true;
    linalg::QMatrix mapped;
    for (const auto& d : directions) {
        linalg::QRow y(f.out_dim, Rat(0));
        for (int i = 0; i < f.out_dim; ++i)
            for (int j = 0; j < f.in_dim; ++j) y[i] += f.matrix[i][j] * d[j];
        mapped.push_back(std::move(y));
    }
    return linalg::rank(std::move(mapped), f.out_dim) == static_cast<int>(directions.size());
}

}  // namespace

ImageData image_with_inverse(const AffineMap& f, const Cell& c) {
    const int n = f.in_dim, m = f.out_dim;
    if (c.dim != n) throw DimMismatch("image: cell dim vs map input dim");
    if (cell_marked_empty(c) || is_empty_Q(c)) {
        return ImageData{empty_cell(m), AffineMap{m, n, {}, {}}};
    }
    Cell ch = hull_strengthen(c);
    if (!injective_on(f, hull_directions(ch)))
        throw NotInjectiveOnHull("map not injective on the domain cell's affine hull");

    // combined equalities over columns (x_0..x_{n-1}, y_0..y_{m-1} | rhs)
    linalg::QMatrix rows;
    for (const auto& k : ch.constraints) {
        if (k.rel != Rel::eq) continue;
        linalg::QRow row(n + m + 1, Rat(0));
        for (int j = 0; j < n; ++j) row[j] = Rat(k.coeffs[j]);
        row[n + m] = k.constant;
        rows.push_back(std::move(row));
    }
    for (int i = 0; i < m; ++i) {
        linalg::QRow row(n + m + 1, Rat(0));
        for (int j = 0; j < n; ++j) row[j] = -f.matrix[i][j];
        row[n + i] = 1;
        row[n + m] = f.offset[i];
        rows.push_back(std::move(row));
    }
    auto pivots = linalg::rref(rows, n + m);

    std::vector<int> pivot_row_of_x(n, -1);
    std::vector<LinConstraint> image_constraints;
    for (auto [r, col] : pivots) {
        if (col < n) {
            pivot_row_of_x[col] = r;
        } else {
            // pure-y equality; zeros left of the pivot include every x column
            std::vector<Rat> a(m);
            for (int k2 = 0; k2 < m; ++k2) a[k2] = rows[r][n + k2];
            image_constraints.push_back(constraint_from_rational(a, rows[r][n + m], Rel::eq));
        }
    }
    for (int j = 0; j < n; ++j)
        if (pivot_row_of_x[j] < 0) throw Error("image: free input column despite injectivity");

    // back-substitution x = B y + s from the x-pivot rows
    AffineMap inv;
    inv.in_dim = m;
    inv.out_dim = n;
    inv.matrix.assign(n, std::vector<Rat>(m, Rat(0)));
    inv.offset.assign(n, Rat(0));
    for (int j = 0; j < n; ++j) {
        const auto& row = rows[pivot_row_of_x[j]];
        for (int k2 = 0; k2 < m; ++k2) inv.matrix[j][k2] = -row[n + k2];
        inv.offset[j] = row[n + m];
    }

    // push the inequalities through the substitution
    for (const auto& k : ch.constraints) {
        if (k.rel == Rel::eq) continue;
        std::vector<Rat> a(m, Rat(0));
        Rat cst = k.constant;
        for (int j = 0; j < n; ++j) {
            if (k.coeffs[j] == 0) continue;
            Rat cj(k.coeffs[j]);
            cst -= cj * inv.offset[j];
            for (int k2 = 0; k2 < m; ++k2) a[k2] += cj * inv.matrix[j][k2];
        }
        image_constraints.push_back(constraint_from_rational(a, cst, k.rel));
    }
    return ImageData{make_cell(m, std::move(image_constraints)), std::move(inv)};
}

Cell image_cell(const AffineMap& f, const Cell& c) { return image_with_inverse(f, c).image; }

Cell preimage_cell(const AffineMap& f, const Cell& c) {
    if (c.dim != f.out_dim) throw DimMismatch("preimage: cell dim vs map output dim");
    if (cell_marked_empty(c)) return empty_cell(f.in_dim);
    std::vector<LinConstraint> cs;
    for (const auto& k : c.constraints) {
        std::vector<Rat> a(f.in_dim, Rat(0));
        Rat cst = k.constant;
        for (int i = 0; i < f.out_dim; ++i) {
            if (k.coeffs[i] == 0) continue;
            Rat ci(k.coeffs[i]);
            cst -= ci * f.offset[i];
            for (int j = 0; j < f.in_dim; ++j) a[j] += ci * f.matrix[i][j];
        }
        cs.push_back(constraint_from_rational(a, cst, k.rel));
    }
    return make_cell(f.in_dim, std::move(cs));
}

TaggedPoint apply(const PiecewiseMap& f, const TaggedPoint& p) {
    const Piece* hit = nullptr;
    for (const auto& piece : f.pieces) {
        if (piece.source_label != p.label) continue;
        if (!cell_contains_point(piece.domain, p.coords)) continue;
        if (hit) throw AmbiguousPiece("point lies in two piece domains");
        hit = &piece;
    }
    if (!hit) throw NotInDomain("point outside every piece domain");
    return TaggedPoint{hit->target_label, hit->map.apply(p.coords)};
}

namespace {

int index_of(const TaggedSum& s, const std::string& label) {
    for (std::size_t i = 0; i < s.components.size(); ++i)
        if (s.components[i].label == label) return static_cast<int>(i);
    return -1;
}

SemiSet one_cell(const Cell& c) { return SemiSet{c.dim, {c}}; }

std::string render_witness(const GroupSpec& g, const SemiSet& s) {
    auto pt = find_G_point(g, s);
    if (!pt) return to_string(s);
    std::string out = "(";
    for (std::size_t i = 0; i < pt->size(); ++i) out += (i ? ", " : "") + rat_to_string((*pt)[i]);
    return out + ")";
}

}  // namespace

BijectionCertificate verify_bijection(const GroupSpec& g, const PiecewiseMap& f) {
    BijectionCertificate cert;
    cert.group = g;

    auto fail = [&](CheckRecord& rec, const std::string& reason, const std::string& witness) {
        rec.pass = false;
        rec.detail = reason;
        cert.pass = false;
        cert.reason = reason;
        cert.witness = witness;
    };

    // structural coherence first; these are construction errors
    for (const auto& piece : f.pieces) {
        int si = index_of(f.domain, piece.source_label);
        int ti = index_of(f.codomain, piece.target_label);
        if (si < 0 || ti < 0) throw Error("piece references unknown component label");
        if (piece.domain.dim != f.domain.components[si].set.dim ||
            piece.map.in_dim != piece.domain.dim ||
            piece.map.out_dim != f.codomain.components[ti].set.dim)
            throw DimMismatch("piece dimensions inconsistent with its components");
    }

    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
        if (!is_definable(g, f.pieces[i].map)) {
            fail(cert.definability, "piece map not definable over " + g.to_string(),
                 "piece #" + std::to_string(i + 1));
            return cert;
        }
    }

    // domain side: pieces partition each component over G
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
        const auto& piece = f.pieces[i];
        const SemiSet& comp = *f.domain.find(piece.source_label);
        SemiSet dom = one_cell(piece.domain);
        if (!subset_G(g, dom, comp)) {
            fail(cert.domain_partition, "piece domain leaves its component",
                 render_witness(g, difference(dom, comp)));
            return cert;
        }
        for (std::size_t j = i + 1; j < f.pieces.size(); ++j) {
            if (f.pieces[j].source_label != piece.source_label) continue;
            Cell overlap = intersect(piece.domain, f.pieces[j].domain);
            if (has_G_point(g, overlap)) {
                fail(cert.domain_partition,
                     "piece domains overlap (pieces #" + std::to_string(i + 1) + ", #" +
                         std::to_string(j + 1) + ")",
                     render_witness(g, one_cell(overlap)));
                return cert;
            }
        }
    }
    for (const auto& comp : f.domain.components) {
        std::vector<Cell> cover;
        for (const auto& piece : f.pieces)
            if (piece.source_label == comp.label) cover.push_back(piece.domain);
        SemiSet rest = difference(comp.set, make_semiset(comp.set.dim, std::move(cover)));
        if (has_G_point(g, rest)) {
            fail(cert.domain_partition, "piece domains do not cover component " + comp.label,
                 render_witness(g, rest));
            return cert;
        }
    }

    // per-piece injectivity and exact images
    std::vector<Cell> images;
    images.reserve(f.pieces.size());
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
        const auto& piece = f.pieces[i];
        try {
            images.push_back(image_cell(piece.map, piece.domain));
        } catch (const NotInjectiveOnHull&) {
            fail(cert.injectivity, "piece map not injective on its domain's affine hull",
                 "piece #" + std::to_string(i + 1));
            return cert;
        }
    }
    cert.image_cells.detail = std::to_string(images.size()) + " image cells computed";

    // codomain side: images partition each component over G
    for (std::size_t i = 0; i < f.pieces.size(); ++i) {
        const SemiSet& comp = *f.codomain.find(f.pieces[i].target_label);
        if (!subset_G(g, one_cell(images[i]), comp)) {
            fail(cert.image_cover, "image leaves the target component",
                 render_witness(g, difference(one_cell(images[i]), comp)));
            return cert;
        }
        for (std::size_t j = i + 1; j < f.pieces.size(); ++j) {
            if (f.pieces[j].target_label != f.pieces[i].target_label) continue;
            Cell overlap = intersect(images[i], images[j]);
            if (has_G_point(g, overlap)) {
                fail(cert.image_disjoint,
                     "images overlap (pieces #" + std::to_string(i + 1) + ", #" +
                         std::to_string(j + 1) + ")",
                     render_witness(g, one_cell(overlap)));
                return cert;
            }
        }
    }
    for (const auto& comp : f.codomain.components) {
        std::vector<Cell> cover;
        for (std::size_t i = 0; i < f.pieces.size(); ++i)
            if (f.pieces[i].target_label == comp.label) cover.push_back(images[i]);
        SemiSet rest = difference(comp.set, make_semiset(comp.set.dim, std::move(cover)));
        if (has_G_point(g, rest)) {
            fail(cert.image_cover, "images do not cover component " + comp.label,
                 render_witness(g, rest));
            return cert;
        }
    }

    cert.pass = true;
    return cert;
}

PiecewiseMap compose(const GroupSpec& g, const PiecewiseMap& f, const PiecewiseMap& h) {
    const auto& mid_f = f.codomain.components;
    const auto& mid_h = h.domain.components;
    if (mid_f.size() != mid_h.size()) throw ChainMismatch("compose: component counts differ");
    for (std::size_t i = 0; i < mid_f.size(); ++i)
        if (mid_f[i].set.dim != mid_h[i].set.dim || !equals_G(g, mid_f[i].set, mid_h[i].set))
            throw ChainMismatch("compose: middle components differ at position " +
                                std::to_string(i + 1));

    PiecewiseMap out;
    out.domain = f.domain;
    out.codomain = h.codomain;
    for (const auto& pf : f.pieces) {
        int mid = index_of(f.codomain, pf.target_label);
        for (const auto& ph : h.pieces) {
            if (index_of(h.domain, ph.source_label) != mid) continue;
            Cell dom = intersect(pf.domain, preimage_cell(pf.map, ph.domain));
            if (is_empty_Q(dom)) continue;
            try {
                if (!has_G_point(g, dom)) continue;
            } catch (const UnsupportedDiscreteCell&) {
                // keep the piece; emptiness over G undecided here
            }
            out.pieces.push_back(Piece{pf.source_label, ph.target_label, std::move(dom),
                                       pf.map.then(ph.map)});
        }
    }
    return out;
}

PiecewiseMap invert(const PiecewiseMap& f, const BijectionCertificate& cert) {
    if (!cert.pass) throw NotVerified("invert requires a pass certificate");
    PiecewiseMap out;
    out.domain = f.codomain;
    out.codomain = f.domain;
    for (const auto& piece : f.pieces) {
        ImageData data = image_with_inverse(piece.map, piece.domain);
        out.pieces.push_back(
            Piece{piece.target_label, piece.source_label, std::move(data.image), std::move(data.inverse)});
    }
    return out;
}

TaggedSum concat_sums(const TaggedSum& a, const TaggedSum& b,
                      std::vector<std::pair<std::string, std::string>>* renames) {
    TaggedSum out = a;
    auto taken = [&](const std::string& label) {
        return std::any_of(out.components.begin(), out.components.end(),
                           [&](const TaggedComponent& c) { return c.label == label; });
    };
    for (const auto& comp : b.components) {
        std::string label = comp.label;
        int k = 2;
        while (taken(label)) label = comp.label + "#" + std::to_string(k++);
        if (renames && label != comp.label) renames->emplace_back(comp.label, label);
        out.components.push_back(TaggedComponent{label, comp.set});
    }
    return out;
}

PiecewiseMap sum(const PiecewiseMap& f, const PiecewiseMap& h) {
    std::vector<std::pair<std::string, std::string>> dom_renames, cod_renames;
    PiecewiseMap out;
    out.domain = concat_sums(f.domain, h.domain, &dom_renames);
    out.codomain = concat_sums(f.codomain, h.codomain, &cod_renames);
    out.pieces = f.pieces;
    auto renamed = [](const std::vector<std::pair<std::string, std::string>>& renames,
                      const std::string& label) {
        for (const auto& [from, to] : renames)
            if (from == label) return to;
        return label;
    };
    for (const auto& piece : h.pieces) {
        Piece p = piece;
        p.source_label = renamed(dom_renames, p.source_label);
        p.target_label = renamed(cod_renames, p.target_label);
        out.pieces.push_back(std::move(p));
    }
    return out;
}

namespace {

TaggedSum product_sum(const TaggedSum& a, const TaggedSum& b) {
    std::vector<TaggedComponent> comps;
    for (const auto& ca : a.components)
        for (const auto& cb : b.components)
            comps.push_back(TaggedComponent{ca.label + "*" + cb.label, product(ca.set, cb.set)});
    return make_sum(std::move(comps));
}

Cell product_cell(const Cell& a, const Cell& b) {
    SemiSet p = product(SemiSet{a.dim, {a}}, SemiSet{b.dim, {b}});
    if (p.cells.empty()) return empty_cell(a.dim + b.dim);
    return p.cells[0];
}

AffineMap direct_sum(const AffineMap& f, const AffineMap& g) {
    AffineMap h;
    h.in_dim = f.in_dim + g.in_dim;
    h.out_dim = f.out_dim + g.out_dim;
    h.matrix.assign(h.out_dim, std::vector<Rat>(h.in_dim, Rat(0)));
    for (int i = 0; i < f.out_dim; ++i)
        for (int j = 0; j < f.in_dim; ++j) h.matrix[i][j] = f.matrix[i][j];
    for (int i = 0; i < g.out_dim; ++i)
        for (int j = 0; j < g.in_dim; ++j) h.matrix[f.out_dim + i][f.in_dim + j] = g.matrix[i][j];
    h.offset = f.offset;
    h.offset.insert(h.offset.end(), g.offset.begin(), g.offset.end());
    return h;
}

}  // namespace

PiecewiseMap prod(const PiecewiseMap& f, const PiecewiseMap& h) {
    PiecewiseMap out;
    out.domain = product_sum(f.domain, h.domain);
    out.codomain = product_sum(f.codomain, h.codomain);
    for (const auto& pf : f.pieces)
        for (const auto& ph : h.pieces) {
            Cell dom = product_cell(pf.domain, ph.domain);
            if (cell_marked_empty(dom)) continue;
            out.pieces.push_back(Piece{pf.source_label + "*" + ph.source_label,
                                       pf.target_label + "*" + ph.target_label, std::move(dom),
                                       direct_sum(pf.map, ph.map)});
        }
    return out;
}

PiecewiseMap identity_map(const TaggedSum& s) {
    PiecewiseMap f;
    f.domain = f.codomain = s;
    for (const auto& comp : s.components)
        for (const auto& cell : comp.set.cells)
            f.pieces.push_back(Piece{comp.label, comp.label, cell, AffineMap::identity(comp.set.dim)});
    return f;
}

PiecewiseMap reorder_map(const TaggedSum& s, const std::vector<int>& perm) {
    if (perm.size() != s.components.size()) throw Error("reorder: permutation size mismatch");
    PiecewiseMap f = identity_map(s);
    std::vector<TaggedComponent> comps;
    for (int idx : perm) comps.push_back(s.components[idx]);
    f.codomain = make_sum(std::move(comps));
    return f;
}

}  // namespace oag
