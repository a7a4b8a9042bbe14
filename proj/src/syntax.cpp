#include "dlite/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace dlite {

QueryFormulaPtr QueryFormula::concept_atom(std::string pred, QueryTerm t) {
    auto f = std::make_shared<QueryFormula>();
    f->kind = Kind::ConceptAtom;
    f->pred = std::move(pred);
    f->terms = {std::move(t)};
    return f;
}

QueryFormulaPtr QueryFormula::role_atom(std::string pred, QueryTerm t1, QueryTerm t2) {
    auto f = std::make_shared<QueryFormula>();
    f->kind = Kind::RoleAtom;
    f->pred = std::move(pred);
    f->terms = {std::move(t1), std::move(t2)};
    return f;
}

QueryFormulaPtr QueryFormula::conj(QueryFormulaPtr a, QueryFormulaPtr b) {
    auto f = std::make_shared<QueryFormula>();
    f->kind = Kind::And;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

QueryFormulaPtr QueryFormula::disj(QueryFormulaPtr a, QueryFormulaPtr b) {
    auto f = std::make_shared<QueryFormula>();
    f->kind = Kind::Or;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}

QueryFormulaPtr QueryFormula::exists(std::vector<std::string> vars, QueryFormulaPtr sub) {
    auto f = std::make_shared<QueryFormula>();
    f->kind = Kind::Exists;
    f->vars = std::move(vars);
    f->sub = std::move(sub);
    return f;
}

std::string QueryFormula::str() const {
    switch (kind) {
        case Kind::ConceptAtom: return pred + "(" + terms[0].name + ")";
        case Kind::RoleAtom: return pred + "(" + terms[0].name + "," + terms[1].name + ")";
        case Kind::And: {
            auto wrap = [](const QueryFormulaPtr& f) {
                if (f->kind == Kind::Or || f->kind == Kind::Exists) return "(" + f->str() + ")";
                return f->str();
            };
            return wrap(lhs) + " & " + wrap(rhs);
        }
        case Kind::Or: {
            auto wrap = [](const QueryFormulaPtr& f) {
                if (f->kind == Kind::Exists) return "(" + f->str() + ")";
                return f->str();
            };
            return wrap(lhs) + " | " + wrap(rhs);
        }
        case Kind::Exists: {
            std::string vs;
            for (size_t i = 0; i < vars.size(); ++i) vs += (i ? "," : "") + vars[i];
            return "exists " + vs + " . (" + sub->str() + ")";
        }
    }
    return "?";
}

std::string Query::str() const {
    std::string vs;
    for (size_t i = 0; i < distinguished.size(); ++i) vs += (i ? "," : "") + distinguished[i];
    return name + "(" + vs + ") := " + body->str();
}

namespace {

QueryFormulaPtr strip_exists(const QueryFormulaPtr& f, std::vector<std::string>& bound) {
    switch (f->kind) {
        case QueryFormula::Kind::Exists: {
            for (const auto& v : f->vars) bound.push_back(v);
            return strip_exists(f->sub, bound);
        }
        case QueryFormula::Kind::And:
            return QueryFormula::conj(strip_exists(f->lhs, bound), strip_exists(f->rhs, bound));
        case QueryFormula::Kind::Or:
            return QueryFormula::disj(strip_exists(f->lhs, bound), strip_exists(f->rhs, bound));
        default:
            return f;
    }
}

} // namespace

PrenexQuery prenex(const Query& q) {
    // Bound variable names are globally distinct (enforced by the parser), so
    // quantifiers commute freely with the positive connectives.
    PrenexQuery p;
    p.distinguished = q.distinguished;
    p.matrix = strip_exists(q.body, p.bound);
    return p;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

struct Token {
    enum class Kind {
        Ident,
        Int,
        Section,  // [tbox] etc; text holds the section name
        LParen,
        RParen,
        Comma,
        Dot,
        Dash,
        Amp,
        Pipe,
        Leq,      // <=
        Eq,       // =
        Neq,      // !=
        Assign,   // :=
        Arrow,    // ->
        LBrace,
        RBrace,
        Ge,       // >=
        End,
    };
    Kind kind;
    std::string text;
    qint value = 0;
    SourceSpan span;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto span_here = [&](int len) {
        return SourceSpan{line, col, line, col + len};
    };
    auto push = [&](Token::Kind k, std::string s, int len, qint v = 0) {
        out.push_back(Token{k, std::move(s), v, span_here(len)});
        col += len;
        i += len;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            line++;
            col = 1;
            i++;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            col++;
            i++;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') i++;
            continue;
        }
        if (c == '[') {
            size_t j = i + 1;
            std::string name;
            while (j < text.size() && text[j] != ']' && text[j] != '\n') name += text[j++];
            if (j >= text.size() || text[j] != ']')
                throw ParseError("unterminated section header", span_here(1));
            push(Token::Kind::Section, name, static_cast<int>(j - i + 1));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
                    text[j] == '\''))
                j++;
            push(Token::Kind::Ident, text.substr(i, j - i), static_cast<int>(j - i));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) j++;
            std::string num = text.substr(i, j - i);
            if (num.size() > 18) throw ParseError("number too large", span_here(1));
            push(Token::Kind::Int, num, static_cast<int>(j - i), std::stoll(num));
            continue;
        }
        auto two = text.substr(i, 2);
        if (two == "<=") { push(Token::Kind::Leq, two, 2); continue; }
        if (two == ">=") { push(Token::Kind::Ge, two, 2); continue; }
        if (two == "!=") { push(Token::Kind::Neq, two, 2); continue; }
        if (two == ":=") { push(Token::Kind::Assign, two, 2); continue; }
        if (two == "->") { push(Token::Kind::Arrow, two, 2); continue; }
        switch (c) {
            case '(': push(Token::Kind::LParen, "(", 1); continue;
            case ')': push(Token::Kind::RParen, ")", 1); continue;
            case ',': push(Token::Kind::Comma, ",", 1); continue;
            case '.': push(Token::Kind::Dot, ".", 1); continue;
            case '-': push(Token::Kind::Dash, "-", 1); continue;
            case '&': push(Token::Kind::Amp, "&", 1); continue;
            case '|': push(Token::Kind::Pipe, "|", 1); continue;
            case '=': push(Token::Kind::Eq, "=", 1); continue;
            case '{': push(Token::Kind::LBrace, "{", 1); continue;
            case '}': push(Token::Kind::RBrace, "}", 1); continue;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", span_here(1));
        }
    }
    out.push_back(Token{Token::Kind::End, "", 0, SourceSpan{line, col, line, col}});
    return out;
}

const std::set<std::string> kConstraintKws = {"dis", "sym", "asym", "ref", "irr", "tra"};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (t.kind != Token::Kind::End) pos_++;
        return t;
    }
    bool accept(Token::Kind k) {
        if (peek().kind == k) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k) throw ParseError("expected " + what, peek().span);
        return next();
    }
    std::string expect_ident(const std::string& what) {
        return expect(Token::Kind::Ident, what).text;
    }

    // Roles promoted by usage, for the bare-name inclusion disambiguation.
    std::set<std::string> role_like;

    Role parse_role() {
        SourceSpan sp = peek().span;
        std::string name = expect_ident("role name");
        bool invd = accept(Token::Kind::Dash);
        (void)sp;
        return Role{name, invd};
    }

    ConceptPtr parse_concept() { return parse_disj(); }

    ConceptPtr parse_disj() {
        auto c = parse_conj();
        while (accept(Token::Kind::Pipe)) c = Concept::disj(c, parse_conj());
        return c;
    }
    ConceptPtr parse_conj() {
        auto c = parse_unary();
        while (accept(Token::Kind::Amp)) c = Concept::conj(c, parse_unary());
        return c;
    }
    ConceptPtr parse_unary() {
        if (peek().kind == Token::Kind::Ident && peek().text == "not") {
            next();
            return Concept::negate(parse_unary());
        }
        return parse_primary();
    }
    ConceptPtr parse_primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::LParen) {
            next();
            auto c = parse_concept();
            expect(Token::Kind::RParen, "')'");
            return c;
        }
        if (t.kind == Token::Kind::Ge) {
            next();
            qint q = expect(Token::Kind::Int, "number").value;
            if (q < 1) throw ParseError(">=q requires q >= 1", t.span);
            Role r = parse_role();
            role_like.insert(r.name);
            if (peek().kind == Token::Kind::Dot) {
                next();
                expect(Token::Kind::LParen, "'(' after '.'");
                auto filler = parse_concept();
                expect(Token::Kind::RParen, "')'");
                return Concept::at_least_q(q, r, filler);
            }
            return Concept::at_least(q, r);
        }
        if (t.kind == Token::Kind::Ident) {
            if (t.text == "top") {
                next();
                return Concept::top();
            }
            if (t.text == "bot") {
                next();
                return Concept::bottom();
            }
            if (t.text == "exists") {
                next();
                Role r = parse_role();
                role_like.insert(r.name);
                return Concept::exists(r);
            }
            next();
            return Concept::atom(t.text);
        }
        throw ParseError("expected concept", t.span);
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

// First pass over the raw tokens collecting names that must denote roles:
// constraint arguments, names after 'exists'/'>= q', dashed names, binary
// assertion predicates, and names in role inclusions with a dash on a side.
std::set<std::string> collect_role_like(const std::vector<Token>& toks) {
    std::set<std::string> roles;
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
        const Token& t = toks[i];
        if (t.kind == Token::Kind::Ident && kConstraintKws.count(t.text) &&
            toks[i + 1].kind == Token::Kind::LParen) {
            for (size_t j = i + 2; j < toks.size() && toks[j].kind != Token::Kind::RParen; ++j)
                if (toks[j].kind == Token::Kind::Ident) roles.insert(toks[j].text);
        }
        if (t.kind == Token::Kind::Ident && t.text == "exists" &&
            toks[i + 1].kind == Token::Kind::Ident)
            roles.insert(toks[i + 1].text);
        if (t.kind == Token::Kind::Ge && toks[i + 1].kind == Token::Kind::Int && i + 2 < toks.size() &&
            toks[i + 2].kind == Token::Kind::Ident)
            roles.insert(toks[i + 2].text);
        if (t.kind == Token::Kind::Ident && toks[i + 1].kind == Token::Kind::Dash)
            roles.insert(t.text);
        // Binary assertion or ABox atom: ident '(' ident ',' ident ')'.
        if (t.kind == Token::Kind::Ident && toks[i + 1].kind == Token::Kind::LParen &&
            i + 5 < toks.size() && toks[i + 2].kind == Token::Kind::Ident &&
            toks[i + 3].kind == Token::Kind::Comma && !kConstraintKws.count(t.text))
            roles.insert(t.text);
    }
    return roles;
}

} // namespace

KnowledgeBase parse_kb(const std::string& text) {
    auto toks = lex(text);
    Parser p(toks);
    p.role_like = collect_role_like(toks);
    KnowledgeBase kb;

    if (!(p.peek().kind == Token::Kind::Section && p.peek().text == "tbox"))
        throw ParseError("expected [tbox]", p.peek().span);
    p.next();

    while (p.peek().kind != Token::Kind::Section && p.peek().kind != Token::Kind::End) {
        SourceSpan sp = p.peek().span;
        const Token& t = p.peek();
        if (t.kind == Token::Kind::Ident && kConstraintKws.count(t.text) &&
            p.peek(1).kind == Token::Kind::LParen) {
            std::string kw = p.next().text;
            p.expect(Token::Kind::LParen, "'('");
            RoleConstraint rc;
            rc.span = sp;
            if (kw == "dis") {
                rc.kind = RoleConstraint::Kind::Dis;
                rc.r1 = p.parse_role();
                p.expect(Token::Kind::Comma, "','");
                rc.r2 = p.parse_role();
                p.role_like.insert(rc.r1.name);
                p.role_like.insert(rc.r2.name);
            } else {
                rc.kind = kw == "sym"    ? RoleConstraint::Kind::Sym
                          : kw == "asym" ? RoleConstraint::Kind::Asym
                          : kw == "ref"  ? RoleConstraint::Kind::Ref
                          : kw == "irr"  ? RoleConstraint::Kind::Irr
                                         : RoleConstraint::Kind::Tra;
                rc.name = p.expect_ident("role name");
                p.role_like.insert(rc.name);
            }
            p.expect(Token::Kind::RParen, "')'");
            kb.tbox.role_constraints.push_back(rc);
            continue;
        }
        // Role inclusion when both sides are role-shaped and at least one is
        // dashed or known to be a role; concept inclusion otherwise.
        bool role_incl = false;
        if (t.kind == Token::Kind::Ident && !kConstraintKws.count(t.text) && t.text != "top" &&
            t.text != "bot" && t.text != "exists" && t.text != "not") {
            size_t k = 1;
            bool lhs_dash = p.peek(1).kind == Token::Kind::Dash;
            if (lhs_dash) k = 2;
            if (p.peek(k).kind == Token::Kind::Leq && p.peek(k + 1).kind == Token::Kind::Ident) {
                bool rhs_dash = p.peek(k + 2).kind == Token::Kind::Dash;
                size_t endk = k + 2 + (rhs_dash ? 1 : 0);
                bool rhs_ends = p.peek(endk).kind == Token::Kind::Section ||
                                p.peek(endk).kind == Token::Kind::End ||
                                p.peek(endk).kind == Token::Kind::Ident ||
                                p.peek(endk).kind == Token::Kind::Ge;
                if (rhs_ends) {
                    if (lhs_dash || rhs_dash)
                        role_incl = true;
                    else if (p.role_like.count(t.text) || p.role_like.count(p.peek(k + 1).text))
                        role_incl = true;
                }
            }
        }
        if (role_incl) {
            Role sub = p.parse_role();
            p.expect(Token::Kind::Leq, "'<='");
            Role sup = p.parse_role();
            p.role_like.insert(sub.name);
            p.role_like.insert(sup.name);
            // Canonical form: R- <= S- is the same axiom as R <= S.
            if (sub.inverted && sup.inverted) {
                sub = inv(sub);
                sup = inv(sup);
            }
            kb.tbox.role_inclusions.push_back(RoleInclusion{sub, sup, sp});
            continue;
        }
        auto lhs = p.parse_concept();
        p.expect(Token::Kind::Leq, "'<='");
        auto rhs = p.parse_concept();
        kb.tbox.concept_inclusions.push_back(ConceptInclusion{lhs, rhs, sp});
    }

    bool una_set = false;
    if (p.peek().kind == Token::Kind::Section && p.peek().text == "abox") {
        p.next();
        while (p.peek().kind != Token::Kind::Section && p.peek().kind != Token::Kind::End) {
            SourceSpan sp = p.peek().span;
            bool positive = true;
            if (p.peek().kind == Token::Kind::Ident && p.peek().text == "not") {
                p.next();
                positive = false;
            }
            std::string name = p.expect_ident("assertion");
            if (p.peek().kind == Token::Kind::LParen) {
                p.next();
                std::string arg1 = p.expect_ident("object name");
                if (p.accept(Token::Kind::Comma)) {
                    std::string arg2 = p.expect_ident("object name");
                    p.expect(Token::Kind::RParen, "')'");
                    kb.abox.role_assertions.push_back({positive, name, arg1, arg2, sp});
                } else {
                    p.expect(Token::Kind::RParen, "')'");
                    kb.abox.concept_assertions.push_back({positive, name, arg1, sp});
                }
                continue;
            }
            if (!positive) throw ParseError("'not' only applies to assertions", sp);
            if (p.accept(Token::Kind::Eq)) {
                std::string other = p.expect_ident("object name");
                kb.abox.equalities.emplace_back(name, other);
                continue;
            }
            if (p.accept(Token::Kind::Neq)) {
                std::string other = p.expect_ident("object name");
                kb.abox.inequalities.emplace_back(name, other);
                continue;
            }
            throw ParseError("expected assertion", sp);
        }
    }
    if (p.peek().kind == Token::Kind::Section && p.peek().text == "options") {
        p.next();
        while (p.peek().kind != Token::Kind::Section && p.peek().kind != Token::Kind::End) {
            SourceSpan sp = p.peek().span;
            std::string key = p.expect_ident("option");
            p.expect(Token::Kind::Eq, "'='");
            std::string val = p.expect_ident("value");
            if (key == "una") {
                kb.una = val == "true";
                if (val != "true" && val != "false") throw ParseError("una = true|false", sp);
                una_set = true;
            } else {
                throw ParseError("unknown option: " + key, sp);
            }
        }
    }
    if (p.peek().kind != Token::Kind::End) throw ParseError("trailing input", p.peek().span);
    (void)una_set;
    if (kb.una && !kb.abox.equalities.empty())
        throw ParseError("una-conflict: equalities require 'una = false'", SourceSpan{1, 1, 1, 1});
    return kb;
}

ConceptPtr parse_concept(const std::string& text) {
    Parser p(lex(text));
    auto c = p.parse_concept();
    if (p.peek().kind != Token::Kind::End) throw ParseError("trailing input", p.peek().span);
    return c;
}

// ---------------------------------------------------------------------------
// Queries

namespace {

class QueryParser {
  public:
    QueryParser(std::vector<Token> toks) : p_(std::move(toks)) {}

    Query parse() {
        Query q;
        q.name = p_.expect_ident("query name");
        p_.expect(Token::Kind::LParen, "'('");
        if (p_.peek().kind == Token::Kind::Ident) {
            q.distinguished.push_back(p_.expect_ident("variable"));
            while (p_.accept(Token::Kind::Comma))
                q.distinguished.push_back(p_.expect_ident("variable"));
        }
        p_.expect(Token::Kind::RParen, "')'");
        p_.expect(Token::Kind::Assign, "':='");
        for (const auto& v : q.distinguished) {
            if (!scope_.insert(v).second)
                throw ParseError("duplicate distinguished variable " + v, p_.peek().span);
            distinguished_.insert(v);
        }
        q.body = parse_body();
        if (p_.peek().kind != Token::Kind::End) throw ParseError("trailing input", p_.peek().span);
        return q;
    }

  private:
    QueryFormulaPtr parse_body() { return parse_disj(); }
    QueryFormulaPtr parse_disj() {
        auto f = parse_conj();
        while (p_.accept(Token::Kind::Pipe)) f = QueryFormula::disj(f, parse_conj());
        return f;
    }
    QueryFormulaPtr parse_conj() {
        auto f = parse_unary();
        while (p_.accept(Token::Kind::Amp)) f = QueryFormula::conj(f, parse_unary());
        return f;
    }
    QueryFormulaPtr parse_unary() {
        const Token& t = p_.peek();
        if (t.kind == Token::Kind::Ident && t.text == "not")
            throw ParseError("negation-not-allowed in positive existential queries", t.span);
        if (t.kind == Token::Kind::Ident && t.text == "exists") {
            p_.next();
            std::vector<std::string> vars;
            vars.push_back(p_.expect_ident("variable"));
            while (p_.accept(Token::Kind::Comma)) vars.push_back(p_.expect_ident("variable"));
            p_.expect(Token::Kind::Dot, "'.'");
            for (const auto& v : vars) {
                if (distinguished_.count(v))
                    throw ParseError("bound variable " + v + " shadows a distinguished variable",
                                     t.span);
                if (!bound_.insert(v).second)
                    throw ParseError("bound variable " + v + " reused", t.span);
                scope_.insert(v);
            }
            // Maximal scope: the quantifier swallows the rest of the body.
            auto sub = parse_body();
            return QueryFormula::exists(vars, sub);
        }
        if (t.kind == Token::Kind::LParen) {
            p_.next();
            auto f = parse_body();
            p_.expect(Token::Kind::RParen, "')'");
            return f;
        }
        // Atom.
        SourceSpan sp = t.span;
        std::string pred = p_.expect_ident("atom");
        p_.expect(Token::Kind::LParen, "'('");
        QueryTerm t1 = parse_term();
        if (p_.accept(Token::Kind::Comma)) {
            QueryTerm t2 = parse_term();
            p_.expect(Token::Kind::RParen, "')'");
            return QueryFormula::role_atom(pred, t1, t2);
        }
        p_.expect(Token::Kind::RParen, "')'");
        (void)sp;
        return QueryFormula::concept_atom(pred, t1);
    }
    QueryTerm parse_term() {
        std::string n = p_.expect_ident("term");
        return QueryTerm{scope_.count(n) > 0, n};
    }

    Parser p_;
    std::set<std::string> scope_;
    std::set<std::string> distinguished_;
    std::set<std::string> bound_;
};

void free_vars(const QueryFormulaPtr& f, std::set<std::string>& bound,
               std::set<std::string>& out) {
    switch (f->kind) {
        case QueryFormula::Kind::ConceptAtom:
        case QueryFormula::Kind::RoleAtom:
            for (const auto& t : f->terms)
                if (t.is_var && !bound.count(t.name)) out.insert(t.name);
            break;
        case QueryFormula::Kind::And:
        case QueryFormula::Kind::Or:
            free_vars(f->lhs, bound, out);
            free_vars(f->rhs, bound, out);
            break;
        case QueryFormula::Kind::Exists: {
            for (const auto& v : f->vars) bound.insert(v);
            free_vars(f->sub, bound, out);
            for (const auto& v : f->vars) bound.erase(v);
            break;
        }
    }
}

} // namespace

Query parse_query(const std::string& text) {
    QueryParser qp(lex(text));
    Query q = qp.parse();
    std::set<std::string> bound, free;
    free_vars(q.body, bound, free);
    for (const auto& v : free)
        if (std::find(q.distinguished.begin(), q.distinguished.end(), v) ==
            q.distinguished.end())
            throw ParseError("free variable " + v + " is not distinguished", SourceSpan{1, 1, 1, 1});
    return q;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Names that any parse of the printed KB will recognize as roles before the
// role-inclusion lines are read (used in concepts, constraints or binary
// assertions, or appearing with a dash).
std::set<std::string> printed_role_evidence(const KnowledgeBase& kb) {
    std::set<std::string> evidence;
    std::function<void(const ConceptPtr&)> walk = [&](const ConceptPtr& c) {
        switch (c->kind()) {
            case Concept::Kind::Basic:
                if (c->basic().kind == BasicConcept::Kind::AtLeast)
                    evidence.insert(c->basic().role.name);
                return;
            case Concept::Kind::Not: return walk(c->child());
            case Concept::Kind::And:
                walk(c->lhs());
                walk(c->rhs());
                return;
            case Concept::Kind::AtLeastQ:
                evidence.insert(c->role().name);
                walk(c->filler());
                return;
        }
    };
    for (const auto& ci : kb.tbox.concept_inclusions) {
        walk(ci.lhs);
        walk(ci.rhs);
    }
    for (const auto& rc : kb.tbox.role_constraints) {
        if (rc.kind == RoleConstraint::Kind::Dis) {
            evidence.insert(rc.r1.name);
            evidence.insert(rc.r2.name);
        } else {
            evidence.insert(rc.name);
        }
    }
    for (const auto& ra : kb.abox.role_assertions) evidence.insert(ra.role_name);
    return evidence;
}

} // namespace

std::string print_kb(const KnowledgeBase& kb) {
    std::ostringstream os;
    os << "[tbox]\n";
    for (const auto& ci : kb.tbox.concept_inclusions) os << ci.str() << "\n";
    std::set<std::string> evidence = printed_role_evidence(kb);
    for (const auto& ri : kb.tbox.role_inclusions) {
        bool evident = ri.sub.inverted || ri.sup.inverted || evidence.count(ri.sub.name) ||
                       evidence.count(ri.sup.name);
        if (evident)
            os << ri.str() << "\n";
        else
            os << inv(ri.sub).str() << " <= " << inv(ri.sup).str() << "\n";
        evidence.insert(ri.sub.name);
        evidence.insert(ri.sup.name);
    }
    for (const auto& rc : kb.tbox.role_constraints) os << rc.str() << "\n";
    os << "[abox]\n";
    for (const auto& ca : kb.abox.concept_assertions) os << ca.str() << "\n";
    for (const auto& ra : kb.abox.role_assertions) os << ra.str() << "\n";
    for (const auto& [a, b] : kb.abox.equalities) os << a << " = " << b << "\n";
    for (const auto& [a, b] : kb.abox.inequalities) os << a << " != " << b << "\n";
    if (!kb.una) os << "[options]\nuna = false\n";
    return os.str();
}

std::string print_query(const Query& q) { return q.str() + "\n"; }

std::string print_interpretation(const Interpretation& i,
                                 const std::vector<std::string>& comments) {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << "\n";
    os << "[domain]\n";
    for (const auto& d : i.domain) os << d << "\n";
    os << "[concepts]\n";
    for (const auto& [name, ext] : i.concept_ext) {
        os << name << " = {";
        bool first = true;
        for (const auto& e : ext) {
            os << (first ? " " : " ") << e;
            first = false;
        }
        os << " }\n";
    }
    os << "[roles]\n";
    for (const auto& [name, ext] : i.role_ext) {
        os << name << " = {";
        for (const auto& [x, y] : ext) os << " (" << x << "," << y << ")";
        os << " }\n";
    }
    os << "[objects]\n";
    for (const auto& [obj, e] : i.object_map) os << obj << " -> " << e << "\n";
    return os.str();
}

Interpretation parse_interpretation(const std::string& text) {
    Parser p(lex(text));
    Interpretation out;
    auto expect_section = [&](const std::string& name) {
        if (!(p.peek().kind == Token::Kind::Section && p.peek().text == name))
            throw ParseError("expected [" + name + "]", p.peek().span);
        p.next();
    };
    expect_section("domain");
    while (p.peek().kind == Token::Kind::Ident) out.domain.push_back(p.next().text);
    expect_section("concepts");
    while (p.peek().kind == Token::Kind::Ident) {
        std::string name = p.next().text;
        p.expect(Token::Kind::Eq, "'='");
        p.expect(Token::Kind::LBrace, "'{'");
        std::set<std::string> ext;
        while (p.peek().kind == Token::Kind::Ident) ext.insert(p.next().text);
        p.expect(Token::Kind::RBrace, "'}'");
        out.concept_ext[name] = std::move(ext);
    }
    expect_section("roles");
    while (p.peek().kind == Token::Kind::Ident) {
        std::string name = p.next().text;
        p.expect(Token::Kind::Eq, "'='");
        p.expect(Token::Kind::LBrace, "'{'");
        std::set<std::pair<std::string, std::string>> ext;
        while (p.accept(Token::Kind::LParen)) {
            std::string x = p.expect_ident("element");
            p.expect(Token::Kind::Comma, "','");
            std::string y = p.expect_ident("element");
            p.expect(Token::Kind::RParen, "')'");
            ext.emplace(x, y);
        }
        p.expect(Token::Kind::RBrace, "'}'");
        out.role_ext[name] = std::move(ext);
    }
    expect_section("objects");
    while (p.peek().kind == Token::Kind::Ident) {
        std::string obj = p.next().text;
        p.expect(Token::Kind::Arrow, "'->'");
        std::string e = p.expect_ident("element");
        out.object_map[obj] = e;
    }
    if (p.peek().kind != Token::Kind::End) throw ParseError("trailing input", p.peek().span);
    return out;
}

} // namespace dlite
