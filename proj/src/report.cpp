// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/report.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace oag::report {

namespace {

using json = nlohmann::ordered_json;

std::string render_point(const std::vector<Rat>& pt) {
    std::string out = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) out += (i ? ", " : "") + rat_to_string(pt[i]);
    return out + ")";
}

std::string shape_name(const SemiSet& s) { return to_string(s); }

}  // namespace

json Report::to_json() const {
    json j;
    j["command"] = command;
    j["group"] = group;
    json jchecks = json::array();
    for (const auto& c : checks)
        jchecks.push_back(json{{"kind", c.kind}, {"subject", c.subject}, {"pass", c.pass},
                               {"detail", c.detail}});
    j["checks"] = std::move(jchecks);
    if (witness) {
        json w;
        w["components"] = witness->components;
        w["multiplicities"] = witness->multiplicities;
        w["target"] = witness->target;
        if (!witness->trace.empty()) w["trace_multiplicities"] = witness->trace;
        if (!witness->padding.empty()) w["slack_padding"] = witness->padding;
        w["match"] = witness->match;
        if (!witness->b.empty()) w["b"] = witness->b;
        j["witness"] = std::move(w);
    }
    if (sampling)
        j["sampling"] = json{{"seed", sampling->seed}, {"count", sampling->count},
                             {"failures", sampling->failures}};
    j["status"] = status;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    os << "group: " << group << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.kind;
        if (!c.subject.empty()) os << " " << c.subject;
        if (!c.detail.empty()) os << "  [" << c.detail << "]";
        os << "\n";
    }
    if (witness) {
        os << "witness components:\n";
        for (std::size_t i = 0; i < witness->components.size(); ++i)
            os << "  " << (i + 1) << ". " << witness->components[i] << "\n";
        os << "multiplicities:";
        for (long m : witness->multiplicities) os << " " << m;
        os << "  (target:";
        for (long m : witness->target) os << " " << m;
        os << ", match: " << (witness->match ? "yes" : "no") << ")\n";
        if (!witness->trace.empty()) {
            os << "trace multiplicities:";
            for (long m : witness->trace) os << " " << m;
            os << "  padding:";
            for (long m : witness->padding) os << " " << m;
            os << "\n";
        }
        if (!witness->b.empty()) os << "b: " << witness->b << "\n";
    }
    if (sampling)
        os << "sampling: seed " << sampling->seed << ", count " << sampling->count << ", failures "
           << sampling->failures << "\n";
    os << "status: " << status << "\n";
    return os.str();
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json().dump(2) + "\n";
    return to_text();
}

namespace {

// Comparison semantics for `check equal` and `check empty` over tagged sums:
// positional, component by component.
bool sums_equal(const GroupSpec& g, const TaggedSum& a, const TaggedSum& b, std::string& detail) {
    if (a.components.size() != b.components.size()) {
        detail = "component counts differ";
        return false;
    }
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        const SemiSet& x = a.components[i].set;
        const SemiSet& y = b.components[i].set;
        if (x.dim != y.dim) {
            detail = "dimension mismatch at component " + std::to_string(i + 1);
            return false;
        }
        if (!equals_G(g, x, y)) {
            auto w = find_G_point(g, union_(difference(x, y), difference(y, x)));
            detail = "sets differ at component " + std::to_string(i + 1);
            if (w) detail += "; witness " + render_point(*w);
            return false;
        }
    }
    return true;
}

}  // namespace

Report run_check(const dsl::Script& script, const Options& opts) {
    Report rep;
    rep.command = "check";
    rep.group = script.group.to_string();
    const GroupSpec& g = script.group;

    for (const auto& st : script.stmts) {
        if (const auto* chk = std::get_if<dsl::CheckStmt>(&st)) {
            CheckResult res;
            try {
                switch (chk->kind) {
                    case dsl::CheckStmt::Kind::empty: {
                        res.kind = "empty";
                        res.subject = chk->args[0];
                        TaggedSum s = dsl::sum_of(script, chk->args[0]);
                        res.pass = true;
                        for (const auto& comp : s.components)
                            if (has_G_point(g, comp.set)) {
                                res.pass = false;
                                auto w = find_G_point(g, comp.set);
                                if (w) res.detail = "witness " + render_point(*w);
                                break;
                            }
                        break;
                    }
                    case dsl::CheckStmt::Kind::equal: {
                        res.kind = "equal";
                        res.subject = chk->args[0] + " " + chk->args[1];
                        res.pass = sums_equal(g, dsl::sum_of(script, chk->args[0]),
                                              dsl::sum_of(script, chk->args[1]), res.detail);
                        break;
                    }
                    case dsl::CheckStmt::Kind::bijection: {
                        res.kind = "bijection";
                        res.subject = chk->args[0];
                        const dsl::MapDecl* m = script.find_map(chk->args[0]);
                        BijectionCertificate cert = verify_bijection(g, m->map);
                        res.pass = cert.pass;
                        if (!cert.pass) {
                            res.detail = cert.reason;
                            if (!cert.witness.empty()) res.detail += "; witness " + cert.witness;
                        }
                        break;
                    }
                    case dsl::CheckStmt::Kind::klass: {
                        res.kind = "class";
                        res.subject = chk->args[0];
                        if (!g.divisible()) {
                            res.pass = false;
                            res.detail = "class requires group Q";
                            break;
                        }
                        RingClass cls = class_of(g, dsl::sum_of(script, chk->args[0]));
                        res.pass = true;
                        res.detail = to_string(cls) + ", euler " + euler_char(cls).str();
                        break;
                    }
                }
            } catch (const Error& e) {
                res.pass = false;
                res.detail = e.what();
            }
            rep.checks.push_back(std::move(res));
        } else if (std::get_if<dsl::DeriveStmt>(&st)) {
            CheckResult res;
            res.kind = "derive";
            res.subject = "witness";
            try {
                WitnessResult w = derive_witness(g);
                res.pass = check_pigeonhole(g, w.X, w.congruence);
                if (!res.pass) res.detail = "witness shape check failed";
            } catch (const Error& e) {
                res.pass = false;
                res.detail = e.what();
            }
            rep.checks.push_back(std::move(res));
        }
    }
    rep.status = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const CheckResult& c) { return c.pass; })
                     ? 0
                     : 1;
    return rep;
}

SamplingReport sample_roundtrip(const GroupSpec& g, const Congruence& c, std::uint64_t samples,
                                std::uint64_t seed) {
    SamplingReport out;
    out.seed = seed;
    PiecewiseMap backward = invert(c.map, c.certificate);

    std::vector<const TaggedComponent*> sources;
    for (const auto& comp : c.domain().components)
        if (has_G_point(g, comp.set)) sources.push_back(&comp);

    Rng rng(seed);
    std::unordered_set<std::string> seen_inputs, seen_outputs;
    auto key_of = [](const TaggedPoint& p) {
        std::string k = p.label;
        for (const auto& v : p.coords) k += "|" + rat_to_string(v);
        return k;
    };

    for (std::uint64_t i = 0; i < samples; ++i) {
        const TaggedComponent& comp = *sources[i % sources.size()];
        ++out.count;
        try {
            TaggedPoint p{comp.label, sample_point(g, comp.set, rng)};
            TaggedPoint q = apply(c.map, p);
            if (!sum_member(g, c.codomain(), q)) {
                ++out.failures;
                continue;
            }
            TaggedPoint back = apply(backward, q);
            if (!(back == p)) {
                ++out.failures;
                continue;
            }
            bool fresh = seen_inputs.insert(key_of(p)).second;
            bool fresh_out = seen_outputs.insert(key_of(q)).second;
            if (fresh != fresh_out) ++out.failures;  // injectivity violated
        } catch (const Error&) {
            ++out.failures;
        }
    }
    return out;
}

namespace {

std::vector<std::string> coordinate_names(int dim) {
    static const char* short_names[] = {"x", "y", "z"};
    std::vector<std::string> vars;
    for (int j = 0; j < dim; ++j)
        vars.push_back(dim <= 3 ? short_names[j] : "x" + std::to_string(j + 1));
    return vars;
}

}  // namespace

std::string emit_witness_script(const GroupSpec& g, const WitnessResult& w) {
    dsl::Script script;
    script.group_name = "G";
    script.group = g;

    // one set declaration per distinct component shape, in order of appearance
    std::vector<SemiSet> shapes;
    std::vector<std::string> shape_names;
    auto shape_of = [&](const SemiSet& s) -> std::string {
        for (std::size_t i = 0; i < shapes.size(); ++i)
            if (shapes[i] == s) return shape_names[i];
        shapes.push_back(s);
        shape_names.push_back("S" + std::to_string(shapes.size()));
        script.stmts.push_back(
            dsl::SetDecl{shape_names.back(), coordinate_names(s.dim), s});
        return shape_names.back();
    };

    std::vector<dsl::Summand> x_summands;
    for (const auto& comp : w.X.components) {
        std::string name = shape_of(comp.set);
        if (!x_summands.empty() && x_summands.back().name == name)
            ++x_summands.back().count;
        else
            x_summands.push_back(dsl::Summand{1, name});
    }
    std::vector<dsl::Summand> xp_summands = x_summands;
    xp_summands.push_back(dsl::Summand{1, "pt"});
    script.stmts.push_back(dsl::SumDecl{"X", x_summands});
    script.stmts.push_back(dsl::SumDecl{"XP", xp_summands});

    TaggedSum dom_sum = dsl::sum_of(script, "XP");
    TaggedSum cod_sum = dsl::sum_of(script, "X");

    // piece domains that are proper sub-cells become helper sets
    std::vector<Cell> helper_cells;
    std::vector<std::string> helper_names;
    auto helper_of = [&](const Cell& cell) -> std::string {
        for (std::size_t i = 0; i < helper_cells.size(); ++i)
            if (helper_cells[i] == cell) return helper_names[i];
        helper_cells.push_back(cell);
        helper_names.push_back("D" + std::to_string(helper_cells.size()));
        script.stmts.push_back(dsl::SetDecl{helper_names.back(), coordinate_names(cell.dim),
                                            SemiSet{cell.dim, {cell}}});
        return helper_names.back();
    };

    auto comp_index = [](const TaggedSum& s, const std::string& label) {
        for (std::size_t i = 0; i < s.components.size(); ++i)
            if (s.components[i].label == label) return static_cast<int>(i) + 1;
        throw Error("emit: unknown label " + label);
    };

    dsl::MapDecl nu;
    nu.name = "nu";
    nu.dom = "XP";
    nu.cod = "X";
    nu.map.domain = dom_sum;
    nu.map.codomain = cod_sum;
    for (const auto& piece : w.congruence.map.pieces) {
        int src = comp_index(w.congruence.domain(), piece.source_label);
        int tgt = comp_index(w.congruence.codomain(), piece.target_label);
        dsl::PieceDecl pd;
        pd.source_base = "XP";
        pd.source_index = src;
        pd.target_base = "X";
        pd.target_index = tgt;
        pd.vars = coordinate_names(piece.domain.dim);
        pd.map = piece.map;
        const SemiSet& comp_set = w.congruence.domain().components[src - 1].set;
        if (!(comp_set.cells.size() == 1 && comp_set.cells[0] == piece.domain) && piece.domain.dim > 0)
            pd.source_restrict = helper_of(piece.domain);
        nu.map.pieces.push_back(Piece{"XP." + std::to_string(src), "X." + std::to_string(tgt),
                                      piece.domain, piece.map});
        nu.pieces.push_back(std::move(pd));
    }
    // helper sets must precede the map; rebuild statement order
    std::vector<dsl::Stmt> ordered;
    for (auto& st : script.stmts)
        if (std::get_if<dsl::SetDecl>(&st)) ordered.push_back(st);
    for (auto& st : script.stmts)
        if (std::get_if<dsl::SumDecl>(&st)) ordered.push_back(st);
    ordered.push_back(nu);
    ordered.push_back(dsl::CheckStmt{dsl::CheckStmt::Kind::bijection, {"nu"}});
    script.stmts = std::move(ordered);
    return dsl::print(script);
}

Report run_derive_witness(const GroupSpec& g, const Options& opts) {
    Report rep;
    rep.command = "derive-witness";
    rep.group = g.to_string();
    if (g.divisible()) {
        rep.status = 2;
        rep.checks.push_back(CheckResult{"derive", "witness", false,
                                         "the group is divisible; no collapse witness exists"});
        return rep;
    }
    WitnessResult w = derive_witness(g);

    rep.checks.push_back(CheckResult{"verify", "witness congruence", w.congruence.certificate.pass,
                                     w.congruence.certificate.pass ? "" : w.congruence.certificate.reason});
    bool ph = check_pigeonhole(g, w.X, w.congruence);
    rep.checks.push_back(CheckResult{"pigeonhole", "X + pt ~ X", ph, ""});

    WitnessReport wr;
    std::vector<std::pair<std::string, long>> grouped;
    for (const auto& comp : w.X.components) {
        std::string name = shape_name(comp.set);
        if (!grouped.empty() && grouped.back().first == name)
            ++grouped.back().second;
        else
            grouped.emplace_back(name, 1);
    }
    for (const auto& [name, count] : grouped) {
        wr.components.push_back(name);
        wr.multiplicities.push_back(count);
    }
    if (w.dense) {
        wr.trace = {w.trace[0], w.trace[1]};
        wr.padding = {w.padding[0], w.padding[1]};
        wr.match = wr.multiplicities == std::vector<long>{w.target[0], w.target[1]};
        wr.b = rat_to_string(w.b);
    } else {
        wr.target = {};
        wr.match = true;
    }
    rep.witness = std::move(wr);

    rep.sampling = sample_roundtrip(g, w.congruence, opts.samples, opts.seed);
    rep.checks.push_back(CheckResult{"sampling", "round trips",
                                     rep.sampling->failures == 0,
                                     std::to_string(rep.sampling->count) + " samples"});

    if (!opts.emit.empty()) {
        std::string text = emit_witness_script(g, w);
        FILE* f = std::fopen(opts.emit.c_str(), "wb");
        if (!f) throw Error("cannot write " + opts.emit);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
        rep.checks.push_back(CheckResult{"emit", opts.emit, true, ""});
    }

    rep.status = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const CheckResult& c) { return c.pass; })
                     ? 0
                     : 1;
    return rep;
}

Report run_class_script(const dsl::Script& script, const Options&) {
    Report rep;
    rep.command = "class";
    rep.group = script.group.to_string();
    if (!script.group.divisible()) {
        rep.status = 2;
        rep.checks.push_back(CheckResult{"class", "", false, "class requires group Q"});
        return rep;
    }
    // evaluate `check class` statements; with none, every set declaration
    std::vector<std::string> targets;
    for (const auto& st : script.stmts)
        if (const auto* chk = std::get_if<dsl::CheckStmt>(&st))
            if (chk->kind == dsl::CheckStmt::Kind::klass) targets.push_back(chk->args[0]);
    if (targets.empty())
        for (const auto& st : script.stmts)
            if (const auto* d = std::get_if<dsl::SetDecl>(&st)) targets.push_back(d->name);
    for (const auto& name : targets) {
        RingClass cls = class_of(script.group, dsl::sum_of(script, name));
        rep.checks.push_back(CheckResult{"class", name, true,
                                         to_string(cls) + ", euler " + euler_char(cls).str()});
    }
    rep.status = 0;
    return rep;
}

Report run_class_expr(const std::string& expr, const Options& opts) {
    dsl::Script script = dsl::parse("group G = Q\nset A = " + expr + "\ncheck class A\n");
    return run_class_script(script, opts);
}

Report run_sample_verify(const dsl::Script& script, const std::string& map_name, const Options& opts) {
    Report rep;
    rep.command = "sample-verify";
    rep.group = script.group.to_string();
    const dsl::MapDecl* m = script.find_map(map_name);
    if (!m) {
        rep.status = 2;
        rep.checks.push_back(CheckResult{"sample-verify", map_name, false, "no such map"});
        return rep;
    }
    BijectionCertificate cert = verify_bijection(script.group, m->map);
    rep.checks.push_back(CheckResult{"bijection", map_name, cert.pass, cert.pass ? "" : cert.reason});
    if (cert.pass) {
        Congruence c{m->map, cert, nullptr};
        rep.sampling = sample_roundtrip(script.group, c, opts.samples, opts.seed);
        rep.checks.push_back(CheckResult{"sampling", "round trips", rep.sampling->failures == 0,
                                         std::to_string(rep.sampling->count) + " samples"});
    }
    rep.status = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const CheckResult& c) { return c.pass; })
                     ? 0
                     : 1;
    return rep;
}

}  // namespace oag::report
