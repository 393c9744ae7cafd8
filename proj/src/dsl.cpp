// Copyright (c) oagtool contributors.
// SPDX-License-Identifier: Apache-2.0
#include "oag/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace oag::dsl {

namespace {

enum class Tok {
    ident, nat,
    eq, lt, le, arrow, plus, minus, star, slash, pipe, amp, dot, comma, colon,
    lbrace, rbrace, lparen, rparen, lbrack, rbrack,
    end
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1, col = 1;
};

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text) { out.push_back(Token{k, std::move(text), line, col}); };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            push(Tok::ident, src.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::nat, src.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        auto two = src.substr(i, 2);
        if (two == "<=") {
            push(Tok::le, "<=");
            i += 2;
            col += 2;
            continue;
        }
        if (two == "->") {
            push(Tok::arrow, "->");
            i += 2;
            col += 2;
            continue;
        }
        Tok k;
        switch (c) {
            case '=': k = Tok::eq; break;
            case '<': k = Tok::lt; break;
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '/': k = Tok::slash; break;
            case '|': k = Tok::pipe; break;
            case '&': k = Tok::amp; break;
            case '.': k = Tok::dot; break;
            case ',': k = Tok::comma; break;
            case ':': k = Tok::colon; break;
            case '{': k = Tok::lbrace; break;
            case '}': k = Tok::rbrace; break;
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case '[': k = Tok::lbrack; break;
            case ']': k = Tok::rbrack; break;
            default: {
                Token t{Tok::end, std::string(1, c), line, col};
                out.push_back(t);
                throw ParseError(line, col, "a token", std::string(1, c));
            }
        }
        push(k, std::string(1, c));
        ++i;
        ++col;
    }
    out.push_back(Token{Tok::end, "end of input", line, col});
    return out;
}

// sparse linear expression over named variables, plus a constant
struct LinExpr {
    std::map<std::string, Rat> terms;
    std::map<std::string, std::pair<int, int>> positions;  // first occurrence
    Rat constant = 0;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    Script run() {
        Script s;
        expect_keyword("group");
        s.group_name = expect(Tok::ident, "group name").text;
        expect(Tok::eq, "'='");
        s.group = parse_group_literal();
        while (!at(Tok::end)) s.stmts.push_back(parse_stmt(s));
        return s;
    }

  private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_keyword(const std::string& kw) const { return at(Tok::ident) && peek().text == kw; }
    Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, expected, t.text);
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) fail(what);
        return advance();
    }
    void expect_keyword(const std::string& kw) {
        if (!at_keyword(kw)) fail("'" + kw + "'");
        advance();
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        advance();
        return true;
    }

    GroupSpec parse_group_literal() {
        Token t = expect(Tok::ident, "group literal (Z, Q, or Z[1/p,...])");
        if (t.text == "Q") return GroupSpec::rationals();
        if (t.text != "Z") throw ParseError(t.line, t.col, "group literal (Z, Q, or Z[1/p,...])", t.text);
        if (!accept(Tok::lbrack)) return GroupSpec::integers();
        std::vector<Int> primes;
        while (true) {
            Token one = expect(Tok::nat, "'1'");
            if (one.text != "1") throw ParseError(one.line, one.col, "'1'", one.text);
            expect(Tok::slash, "'/'");
            Token p = expect(Tok::nat, "a prime");
            if (!is_prime(Int(p.text))) throw ParseError(p.line, p.col, "a prime", p.text);
            primes.push_back(Int(p.text));
            if (!accept(Tok::comma)) break;
        }
        expect(Tok::rbrack, "']'");
        return GroupSpec::localized(std::move(primes));
    }

    Stmt parse_stmt(Script& s) {
        if (at_keyword("set")) return parse_set(s);
        if (at_keyword("sum")) return parse_sum(s);
        if (at_keyword("map")) return parse_map(s);
        if (at_keyword("check")) return parse_check(s);
        if (at_keyword("derive")) {
            advance();
            expect_keyword("witness");
            return DeriveStmt{};
        }
        fail("a statement (set, sum, map, check, derive)");
    }

    Rat parse_rational() {
        Token n = expect(Tok::nat, "a number");
        if (!accept(Tok::slash)) return Rat(Int(n.text));
        Token d = expect(Tok::nat, "a denominator");
        Int den(d.text);
        if (den == 0) throw ParseError(d.line, d.col, "a nonzero denominator", d.text);
        return Rat(Int(n.text), den);
    }

    // term := RATIONAL | RATIONAL '*' IDENT | IDENT
    void parse_term(LinExpr& e, const Rat& sign) {
        if (at(Tok::nat)) {
            Rat value = parse_rational();
            if (accept(Tok::star)) {
                Token v = expect(Tok::ident, "a variable");
                e.terms[v.text] += sign * value;
                e.positions.emplace(v.text, std::make_pair(v.line, v.col));
            } else {
                e.constant += sign * value;
            }
            return;
        }
        Token v = expect(Tok::ident, "a term");
        e.terms[v.text] += sign;
        e.positions.emplace(v.text, std::make_pair(v.line, v.col));
    }

    LinExpr parse_linexpr() {
        LinExpr e;
        Rat sign = accept(Tok::minus) ? Rat(-1) : Rat(1);
        parse_term(e, sign);
        while (at(Tok::plus) || at(Tok::minus)) {
            sign = advance().kind == Tok::plus ? Rat(1) : Rat(-1);
            parse_term(e, sign);
        }
        return e;
    }

    LinConstraint parse_constraint(const std::vector<std::string>& vars) {
        LinExpr lhs = parse_linexpr();
        Rel rel;
        if (accept(Tok::lt))
            rel = Rel::lt;
        else if (accept(Tok::le))
            rel = Rel::le;
        else if (accept(Tok::eq))
            rel = Rel::eq;
        else
            fail("'<', '<=' or '='");
        LinExpr rhs = parse_linexpr();

        std::vector<Rat> coeffs(vars.size(), Rat(0));
        auto place = [&](const LinExpr& e, const Rat& sgn) {
            for (const auto& [name, coef] : e.terms) {
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end()) {
                    auto pos = e.positions.at(name);
                    throw NameError(pos.first, pos.second, name);
                }
                coeffs[it - vars.begin()] += sgn * coef;
            }
        };
        place(lhs, Rat(1));
        place(rhs, Rat(-1));
        return constraint_from_rational(coeffs, rhs.constant - lhs.constant, rel);
    }

    // '{' '(' vars ')' ':' constraint (',' constraint)* '}'
    std::pair<std::vector<std::string>, Cell> parse_cell_block() {
        expect(Tok::lbrace, "'{'");
        expect(Tok::lparen, "'('");
        std::vector<std::string> vars;
        vars.push_back(expect(Tok::ident, "a variable").text);
        while (accept(Tok::comma)) vars.push_back(expect(Tok::ident, "a variable").text);
        expect(Tok::rparen, "')'");
        expect(Tok::colon, "':'");
        std::vector<LinConstraint> cs;
        cs.push_back(parse_constraint(vars));
        while (accept(Tok::comma)) cs.push_back(parse_constraint(vars));
        expect(Tok::rbrace, "'}'");
        int dim = static_cast<int>(vars.size());
        return {std::move(vars), make_cell(dim, std::move(cs))};
    }

    Stmt parse_set(Script& s) {
        advance();
        Token name = expect(Tok::ident, "a set name");
        check_fresh(s, name);
        expect(Tok::eq, "'='");
        auto [vars, first] = parse_cell_block();
        std::vector<Cell> cells = {first};
        while (accept(Tok::pipe)) {
            auto [more_vars, cell] = parse_cell_block();
            if (more_vars.size() != vars.size())
                throw ParseError(peek().line, peek().col, "matching tuple arity", peek().text);
            cells.push_back(cell);
        }
        int dim = static_cast<int>(vars.size());
        return SetDecl{name.text, std::move(vars), make_semiset(dim, std::move(cells))};
    }

    Stmt parse_sum(Script& s) {
        advance();
        Token name = expect(Tok::ident, "a sum name");
        check_fresh(s, name);
        expect(Tok::eq, "'='");
        std::vector<Summand> summands;
        do {
            Summand sm;
            if (at(Tok::nat)) {
                sm.count = std::stol(advance().text);
                expect(Tok::star, "'*'");
            }
            Token ref = expect(Tok::ident, "a set name or 'pt'");
            sm.name = ref.text;
            if (sm.name != "pt" && !s.find_set(sm.name)) throw NameError(ref.line, ref.col, ref.text);
            if (sm.count < 1) throw ParseError(ref.line, ref.col, "a positive count", ref.text);
            summands.push_back(std::move(sm));
        } while (accept(Tok::plus));
        return SumDecl{name.text, std::move(summands)};
    }

    struct CompRef {
        std::string base;
        int index = 0;
        int line = 0, col = 0;
    };

    CompRef parse_compref() {
        Token base = expect(Tok::ident, "a component reference");
        CompRef ref{base.text, 0, base.line, base.col};
        if (accept(Tok::dot)) ref.index = std::stoi(expect(Tok::nat, "a component index").text);
        return ref;
    }

    // resolves a compref against a declared set or sum
    std::string resolve_component(const Script& s, const std::string& container, const CompRef& ref,
                                  const TaggedSum& sum) {
        std::string label = ref.base;
        if (ref.index > 0) label += "." + std::to_string(ref.index);
        if (ref.base != container) throw NameError(ref.line, ref.col, ref.base);
        if (!sum.find(label)) throw NameError(ref.line, ref.col, label);
        return label;
    }

    Stmt parse_map(Script& s) {
        advance();
        Token name = expect(Tok::ident, "a map name");
        check_fresh(s, name);
        expect(Tok::colon, "':'");
        Token dom = expect(Tok::ident, "a set or sum name");
        if (!s.find_set(dom.text) && !s.find_sum(dom.text)) throw NameError(dom.line, dom.col, dom.text);
        expect(Tok::arrow, "'->'");
        Token cod = expect(Tok::ident, "a set or sum name");
        if (!s.find_set(cod.text) && !s.find_sum(cod.text)) throw NameError(cod.line, cod.col, cod.text);
        expect(Tok::lbrace, "'{'");

        TaggedSum dom_sum = sum_of(s, dom.text);
        TaggedSum cod_sum = sum_of(s, cod.text);
        MapDecl decl;
        decl.name = name.text;
        decl.dom = dom.text;
        decl.cod = cod.text;
        decl.map.domain = dom_sum;
        decl.map.codomain = cod_sum;

        while (at_keyword("on")) {
            advance();
            PieceDecl piece;
            CompRef src = parse_compref();
            piece.source_base = src.base;
            piece.source_index = src.index;
            std::string source_label = resolve_component(s, dom.text, src, dom_sum);
            const SemiSet* domain_set = dom_sum.find(source_label);
            if (accept(Tok::amp)) {
                Token rs = expect(Tok::ident, "a set name");
                const SetDecl* rdecl = s.find_set(rs.text);
                if (!rdecl) throw NameError(rs.line, rs.col, rs.text);
                if (rdecl->set.dim != domain_set->dim)
                    throw ParseError(rs.line, rs.col, "a set of dimension " +
                                     std::to_string(domain_set->dim), rs.text);
                piece.source_restrict = rs.text;
                domain_set = &rdecl->set;
            }
            std::string target_label;
            if (at_keyword("to")) {
                advance();
                CompRef tgt = parse_compref();
                piece.target_base = tgt.base;
                piece.target_index = tgt.index;
                target_label = resolve_component(s, cod.text, tgt, cod_sum);
            } else {
                if (cod_sum.components.size() != 1)
                    fail("'to' (codomain has several components)");
                target_label = cod_sum.components[0].label;
            }
            expect(Tok::colon, "':'");
            expect(Tok::lparen, "'('");
            while (!at(Tok::rparen)) {
                piece.vars.push_back(expect(Tok::ident, "a variable").text);
                if (!at(Tok::rparen)) expect(Tok::comma, "','");
            }
            expect(Tok::rparen, "')'");
            if (static_cast<int>(piece.vars.size()) != domain_set->dim)
                fail(std::to_string(domain_set->dim) + " bound variables");
            expect(Tok::arrow, "'->'");
            expect(Tok::lparen, "'('");
            std::vector<LinExpr> exprs;
            exprs.push_back(parse_linexpr());
            while (accept(Tok::comma)) exprs.push_back(parse_linexpr());
            expect(Tok::rparen, "')'");
            const SemiSet* target_set = cod_sum.find(target_label);
            if (static_cast<int>(exprs.size()) != target_set->dim)
                fail(std::to_string(target_set->dim) + " output expressions");

            AffineMap m;
            m.in_dim = domain_set->dim;
            m.out_dim = target_set->dim;
            m.matrix.assign(m.out_dim, std::vector<Rat>(m.in_dim, Rat(0)));
            m.offset.assign(m.out_dim, Rat(0));
            for (int r = 0; r < m.out_dim; ++r) {
                m.offset[r] = exprs[r].constant;
                for (const auto& [var, coef] : exprs[r].terms) {
                    auto it = std::find(piece.vars.begin(), piece.vars.end(), var);
                    if (it == piece.vars.end()) {
                        auto pos = exprs[r].positions.at(var);
                        throw NameError(pos.first, pos.second, var);
                    }
                    m.matrix[r][it - piece.vars.begin()] = coef;
                }
            }
            piece.map = m;
            for (const auto& cell : domain_set->cells)
                decl.map.pieces.push_back(Piece{source_label, target_label, cell, m});
            decl.pieces.push_back(std::move(piece));
        }
        expect(Tok::rbrace, "'}'");
        if (decl.pieces.empty()) fail("'on' (at least one piece)");
        return decl;
    }

    Stmt parse_check(Script& s) {
        advance();
        Token kw = expect(Tok::ident, "a check kind (empty, equal, bijection, class)");
        CheckStmt c;
        auto named_set_or_sum = [&]() {
            Token t = expect(Tok::ident, "a set or sum name");
            if (!s.find_set(t.text) && !s.find_sum(t.text)) throw NameError(t.line, t.col, t.text);
            return t.text;
        };
        if (kw.text == "empty") {
            c.kind = CheckStmt::Kind::empty;
            c.args = {named_set_or_sum()};
        } else if (kw.text == "equal") {
            c.kind = CheckStmt::Kind::equal;
            c.args = {named_set_or_sum(), named_set_or_sum()};
        } else if (kw.text == "bijection") {
            c.kind = CheckStmt::Kind::bijection;
            Token t = expect(Tok::ident, "a map name");
            if (!s.find_map(t.text)) throw NameError(t.line, t.col, t.text);
            c.args = {t.text};
        } else if (kw.text == "class") {
            c.kind = CheckStmt::Kind::klass;
            c.args = {named_set_or_sum()};
        } else {
            throw ParseError(kw.line, kw.col, "a check kind (empty, equal, bijection, class)", kw.text);
        }
        return c;
    }

    void check_fresh(const Script& s, const Token& name) {
        if (s.find_set(name.text) || s.find_sum(name.text) || s.find_map(name.text) ||
            name.text == "pt" || name.text == s.group_name)
            throw ParseError(name.line, name.col, "a fresh identifier", name.text);
    }
};

}  // namespace

const SetDecl* Script::find_set(const std::string& name) const {
    for (const auto& st : stmts)
        if (const auto* d = std::get_if<SetDecl>(&st))
            if (d->name == name) return d;
    return nullptr;
}

const SumDecl* Script::find_sum(const std::string& name) const {
    for (const auto& st : stmts)
        if (const auto* d = std::get_if<SumDecl>(&st))
            if (d->name == name) return d;
    return nullptr;
}

const MapDecl* Script::find_map(const std::string& name) const {
    for (const auto& st : stmts)
        if (const auto* d = std::get_if<MapDecl>(&st))
            if (d->name == name) return d;
    return nullptr;
}

TaggedSum sum_of(const Script& s, const std::string& name) {
    if (const SetDecl* d = s.find_set(name))
        return make_sum({TaggedComponent{name, d->set}});
    const SumDecl* d = s.find_sum(name);
    if (!d) throw Error("unknown set or sum: " + name);
    std::vector<TaggedComponent> comps;
    int k = 0;
    for (const auto& sm : d->summands) {
        const SemiSet* set = nullptr;
        SemiSet pt = point_space();
        if (sm.name == "pt")
            set = &pt;
        else
            set = &s.find_set(sm.name)->set;
        for (long i = 0; i < sm.count; ++i)
            comps.push_back(TaggedComponent{name + "." + std::to_string(++k), *set});
    }
    return make_sum(std::move(comps));
}

Script parse(const std::string& text) { return Parser(text).run(); }

namespace {

void print_int_linear(std::ostream& os, const std::vector<Int>& coeffs,
                      const std::vector<std::string>& vars, const Rat* constant_only = nullptr) {
    bool first = true;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        Int a = coeffs[j];
        if (first)
            os << (a < 0 ? "-" : "");
        else
            os << (a < 0 ? " - " : " + ");
        Int mag = abs(a);
        if (mag != 1) os << mag << "*";
        os << vars[j];
        first = false;
    }
    if (first) os << (constant_only ? rat_to_string(*constant_only) : "0");
}

void print_rat_linear(std::ostream& os, const std::vector<Rat>& coeffs,
                      const std::vector<std::string>& vars, const Rat& constant) {
    bool first = true;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        Rat a = coeffs[j];
        if (first)
            os << (a < 0 ? "-" : "");
        else
            os << (a < 0 ? " - " : " + ");
        Rat mag = abs(a);
        if (mag != 1) os << rat_to_string(mag) << "*";
        os << vars[j];
        first = false;
    }
    if (constant != 0 || first) {
        if (first)
            os << rat_to_string(constant);
        else
            os << (constant < 0 ? " - " : " + ") << rat_to_string(abs(constant));
    }
}

void print_cell(std::ostream& os, const Cell& c, const std::vector<std::string>& vars) {
    os << "{ (";
    for (std::size_t j = 0; j < vars.size(); ++j) os << (j ? ", " : "") << vars[j];
    os << ") : ";
    for (std::size_t i = 0; i < c.constraints.size(); ++i) {
        const auto& k = c.constraints[i];
        if (i) os << ", ";
        print_int_linear(os, k.coeffs, vars);
        os << (k.rel == Rel::lt ? " < " : k.rel == Rel::le ? " <= " : " = ");
        os << rat_to_string(k.constant);
    }
    if (c.constraints.empty()) os << "0 = 0";
    os << " }";
}

void print_set(std::ostream& os, const SetDecl& d) {
    os << "set " << d.name << " = ";
    if (d.set.cells.empty()) {
        os << "{ (";
        for (std::size_t j = 0; j < d.vars.size(); ++j) os << (j ? ", " : "") << d.vars[j];
        os << ") : 0 = 1 }";
    }
    for (std::size_t i = 0; i < d.set.cells.size(); ++i) {
        if (i) os << " | ";
        print_cell(os, d.set.cells[i], d.vars);
    }
    os << "\n";
}

void print_map(std::ostream& os, const MapDecl& d) {
    os << "map " << d.name << " : " << d.dom << " -> " << d.cod << " {\n";
    for (const auto& piece : d.pieces) {
        os << "  on " << piece.source_base;
        if (piece.source_index > 0) os << "." << piece.source_index;
        if (!piece.source_restrict.empty()) os << " & " << piece.source_restrict;
        if (!piece.target_base.empty()) {
            os << " to " << piece.target_base;
            if (piece.target_index > 0) os << "." << piece.target_index;
        }
        os << " : (";
        for (std::size_t j = 0; j < piece.vars.size(); ++j) os << (j ? ", " : "") << piece.vars[j];
        os << ") -> (";
        for (int r = 0; r < piece.map.out_dim; ++r) {
            if (r) os << ", ";
            print_rat_linear(os, piece.map.matrix[r], piece.vars, piece.map.offset[r]);
        }
        os << ")\n";
    }
    os << "}\n";
}

}  // namespace

std::string print(const Script& s) {
    std::ostringstream os;
    os << "group " << s.group_name << " = " << s.group.to_string() << "\n";
    for (const auto& st : s.stmts) {
        if (const auto* d = std::get_if<SetDecl>(&st)) {
            print_set(os, *d);
        } else if (const auto* d = std::get_if<SumDecl>(&st)) {
            os << "sum " << d->name << " = ";
            for (std::size_t i = 0; i < d->summands.size(); ++i) {
                if (i) os << " + ";
                if (d->summands[i].count != 1) os << d->summands[i].count << "*";
                os << d->summands[i].name;
            }
            os << "\n";
        } else if (const auto* d = std::get_if<MapDecl>(&st)) {
            print_map(os, *d);
        } else if (const auto* d = std::get_if<CheckStmt>(&st)) {
            os << "check ";
            switch (d->kind) {
                case CheckStmt::Kind::empty: os << "empty"; break;
                case CheckStmt::Kind::equal: os << "equal"; break;
                case CheckStmt::Kind::bijection: os << "bijection"; break;
                case CheckStmt::Kind::klass: os << "class"; break;
            }
            for (const auto& a : d->args) os << " " << a;
            os << "\n";
        } else if (std::get_if<DeriveStmt>(&st)) {
            os << "derive witness\n";
        }
    }
    return os.str();
}

}  // namespace oag::dsl
