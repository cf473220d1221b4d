#pragma once

// Module expressions:
//   S(v) | P(v) | I(v) | L(a) | C(a) | shift(E, i) | sum(E, E, ...)
//   | truncle(E, r) | truncge(E, r)
//   | coker(x@m, ...; y@n, ...; row | row ...)   cokernel of sum P_y<n> -> sum P_x<m>
//   | ker(y@n, ...; x@m, ...; row | row ...)     kernel of sum I_y<n> -> sum I_x<m>
// Rows are indexed by the target summands, entries within a row by the source
// summands, separated by commas; an entry is a sum of terms `c*w` with w a
// word `a.b.c` (or `e_v` for a trivial word) running from the target summand's
// vertex to the source summand's vertex. An empty entry is zero.

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "complex.hpp"

namespace koszulkit {

struct Presentation {
    SummandKind kind = SummandKind::projective;
    std::vector<Summand> targets;  // P^0 (projective) or I^1 (injective)
    std::vector<Summand> sources;  // P^{-1} (projective) or I^0 (injective)
    Entries entries;               // (target index, source index) -> words
};

struct ModuleExpr {
    std::string op;  // S P I L C shift sum truncle truncge coker ker
    std::string name;
    int number = 0;
    std::vector<std::shared_ptr<ModuleExpr>> args;
    std::shared_ptr<Presentation> presentation;
};

using ModuleExprPtr = std::shared_ptr<ModuleExpr>;

class ModuleExprParser {
public:
    ModuleExprParser(const std::string& text, const MonomialAlgebra& A) : s_(text), A_(A) {}

    ModuleExprPtr parse() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(0, "module expression, column " + std::to_string(pos_ + 1) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string ident() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (b == pos_) fail("expected identifier");
        return s_.substr(b, pos_ - b);
    }
    int integer() {
        skip();
        std::size_t b = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string t = s_.substr(b, pos_ - b);
        if (t.empty() || t == "-" || t == "+") fail("expected integer");
        return std::stoi(t);
    }

    ModuleExprPtr expr() {
        std::string op = ident();
        auto e = std::make_shared<ModuleExpr>();
        e->op = op;
        expect('(');
        if (op == "S" || op == "P" || op == "I") {
            e->name = ident();
            if (!A_.find_vertex(e->name)) fail("unknown vertex '" + e->name + "'");
        } else if (op == "L" || op == "C") {
            e->name = ident();
            if (!A_.find_arrow(e->name)) fail("unknown arrow '" + e->name + "'");
        } else if (op == "shift" || op == "truncle" || op == "truncge") {
            e->args.push_back(expr());
            expect(',');
            e->number = integer();
        } else if (op == "sum") {
            e->args.push_back(expr());
            while (peek(',')) {
                ++pos_;
                e->args.push_back(expr());
            }
        } else if (op == "coker" || op == "ker") {
            e->presentation = presentation(op == "coker" ? SummandKind::projective : SummandKind::injective);
        } else {
            fail("unknown constructor '" + op + "'");
        }
        expect(')');
        return e;
    }

    std::vector<Summand> summands() {
        std::vector<Summand> out;
        if (peek(';')) return out;
        while (true) {
            std::string v = ident();
            if (!A_.find_vertex(v)) fail("unknown vertex '" + v + "'");
            expect('@');
            int d = integer();
            out.push_back({A_.vertex(v), d, ""});
            if (!peek(',')) break;
            ++pos_;
        }
        return out;
    }

    std::shared_ptr<Presentation> presentation(SummandKind kind) {
        auto p = std::make_shared<Presentation>();
        p->kind = kind;
        // coker lists targets first, ker lists sources first
        auto first = summands();
        expect(';');
        auto second = summands();
        expect(';');
        if (kind == SummandKind::projective) {
            p->targets = first;
            p->sources = second;
        } else {
            p->sources = first;
            p->targets = second;
        }
        const int rows = static_cast<int>(p->targets.size()), cols = static_cast<int>(p->sources.size());
        for (int r = 0; r < rows; ++r) {
            if (r > 0) expect('|');
            for (int c = 0; c < cols; ++c) {
                if (c > 0) expect(',');
                PathCombination comb = entry();
                for (auto& [w, x] : comb) {
                    const Summand &row = p->targets[r], &col = p->sources[c];
                    if (w.source != row.vertex || w.target != col.vertex)
                        fail("entry (" + std::to_string(r) + "," + std::to_string(c) + ") word " + A_.word_string(w) +
                             " does not run from " + A_.vertex_name(row.vertex) + " to " + A_.vertex_name(col.vertex));
                    int want = col.degree - row.degree;
                    if (w.length() != want)
                        fail("entry (" + std::to_string(r) + "," + std::to_string(c) + ") word " + A_.word_string(w) +
                             " has length " + std::to_string(w.length()) + ", expected " + std::to_string(want));
                }
                if (!comb.empty()) p->entries[{r, c}] = std::move(comb);
            }
        }
        if (rows == 0 && peek('|')) fail("matrix has rows but no target summands");
        return p;
    }

    PathCombination entry() {
        PathCombination comb;
        skip();
        if (pos_ >= s_.size() || s_[pos_] == ',' || s_[pos_] == '|' || s_[pos_] == ')') return comb;
        int sign = 1;
        if (peek('-')) {
            ++pos_;
            sign = -1;
        } else if (peek('+')) {
            ++pos_;
        }
        while (true) {
            Rational c = coefficient();
            Path w = word();
            if (!A_.is_nonzero(w.arrows)) fail("word " + A_.word_string(w) + " is zero in the algebra");
            add_term(comb, w, sign * c);
            if (peek('+')) {
                ++pos_;
                sign = 1;
            } else if (peek('-')) {
                ++pos_;
                sign = -1;
            } else {
                break;
            }
        }
        return comb;
    }

    Rational coefficient() {
        skip();
        std::size_t save = pos_;
        std::size_t b = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
        if (pos_ > b && peek('*')) {
            Rational c = parse_rational(s_.substr(b, pos_ - b));
            ++pos_;
            return c;
        }
        pos_ = save;
        return 1;
    }

    Path word() {
        std::string first = ident();
        if (first.rfind("e_", 0) == 0 && A_.find_vertex(first.substr(2)) && !A_.find_arrow(first)) {
            int v = A_.vertex(first.substr(2));
            return Path{v, v, {}};
        }
        std::vector<int> arrows;
        auto arrow = [&](const std::string& n) {
            if (!A_.find_arrow(n)) fail("unknown arrow '" + n + "'");
            arrows.push_back(A_.arrow_id(n));
        };
        arrow(first);
        while (peek('.')) {
            ++pos_;
            arrow(ident());
        }
        Path p{A_.source(arrows.front()), A_.source(arrows.front()), {}};
        for (int a : arrows) {
            if (A_.source(a) != p.target) fail("word is not composable");
            p.arrows.push_back(a);
            p.target = A_.target(a);
        }
        return p;
    }

    std::string s_;
    std::size_t pos_ = 0;
    const MonomialAlgebra& A_;
};

inline ModuleExprPtr parse_module_expr(const std::string& text, const MonomialAlgebra& A) {
    return ModuleExprParser(text, A).parse();
}

// Two-term complex P^{-1} -> P^0 (projective) or I^0 -> I^1 (injective) of a presentation.
inline SummandComplex presentation_complex(const AlgebraPtr& A, const Presentation& p) {
    if (p.kind == SummandKind::projective) {
        SummandComplex X(SummandKind::projective, A, -1);
        X.push_term(p.sources);
        X.push_term(p.targets);
        X.set_diff(-1, p.entries);
        return X;
    }
    SummandComplex X(SummandKind::injective, A, 0);
    X.push_term(p.sources);
    X.push_term(p.targets);
    X.set_diff(0, p.entries);
    return X;
}

inline GradedModule presented_module(const AlgebraPtr& A, const Presentation& p, const Limits& lim) {
    ModuleComplex X = expand(presentation_complex(A, p), lim);
    if (p.kind == SummandKind::projective) return *cokernel(X.diff(-1)).module;
    return *kernel(X.diff(0)).module;
}

inline GradedModule evaluate(const ModuleExpr& e, const AlgebraPtr& A, const Limits& lim) {
    if (e.op == "S") return simple_module(A, A->vertex(e.name));
    if (e.op == "P") return projective_module(A, A->vertex(e.name), 0, lim);
    if (e.op == "I") return injective_module(A, A->vertex(e.name), 0, lim);
    if (e.op == "L") return arrow_ideal(A, A->arrow_id(e.name), lim);
    if (e.op == "C") return arrow_coideal(A, A->arrow_id(e.name), lim);
    if (e.op == "shift") return shift(evaluate(*e.args[0], A, lim), e.number);
    if (e.op == "sum") {
        std::vector<GradedModule> parts;
        for (auto& a : e.args) parts.push_back(evaluate(*a, A, lim));
        return direct_sum(parts, A);
    }
    if (e.op == "truncle") return trim(truncate(evaluate(*e.args[0], A, lim), TruncMode::le, e.number).quotient);
    if (e.op == "truncge") return trim(truncate(evaluate(*e.args[0], A, lim), TruncMode::ge, e.number).sub);
    if (e.op == "coker" || e.op == "ker") return presented_module(A, *e.presentation, lim);
    throw Error("unknown module constructor '" + e.op + "'");
}

inline GradedModule parse_module(const std::string& text, const AlgebraPtr& A, const Limits& lim = {}) {
    return evaluate(*parse_module_expr(text, *A), A, lim);
}

}  // namespace koszulkit
