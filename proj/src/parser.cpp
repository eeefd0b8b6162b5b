#include "fpdde/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace fpdde {

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma,
                 LBracket, RBracket, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (i < s_.size()) {
            char c = s_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
                out.push_back({Tok::Int, s_.substr(start, i - start), {start, i}});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                while (i < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i])) ||
                                         s_[i] == '_'))
                    ++i;
                out.push_back({Tok::Ident, s_.substr(start, i - start), {start, i}});
                continue;
            }
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '/': k = Tok::Slash; break;
                case '^': k = Tok::Caret; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case ',': k = Tok::Comma; break;
                case '[': k = Tok::LBracket; break;
                case ']': k = Tok::RBracket; break;
                default:
                    throw ParseError(std::string("unexpected character '") + c + "'",
                                     {start, start + 1});
            }
            ++i;
            out.push_back({k, s_.substr(start, 1), {start, i}});
        }
        out.push_back({Tok::End, "", {s_.size(), s_.size()}});
        return out;
    }

  private:
    const std::string& s_;
};

mpq_class int_literal(const std::string& digits) { return mpq_class(digits); }

class Parser {
  public:
    Parser(const std::string& text, int m, const SymbolRegistry& reg)
        : m_(m), reg_(reg), toks_(Lexer(text).run()) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        expect(Tok::End, "end of input");
        return e;
    }

  private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at(Tok k) const { return cur().kind == k; }

    void expect(Tok k, const std::string& what) {
        if (!at(k)) throw ParseError("expected " + what, cur().span, {what});
        ++pos_;
    }

    ExprPtr expr() {
        std::vector<ExprPtr> terms;
        terms.push_back(term());
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = next().kind == Tok::Minus;
            ExprPtr t = term();
            terms.push_back(minus ? make_neg(std::move(t)) : std::move(t));
        }
        return make_add(std::move(terms));
    }

    /* `numeric` marks a bare (possibly negated) integer or rational
       literal; those are the only legal left sides of `/` and the only
       factors that juxtapose. */
    struct Factor {
        ExprPtr e;
        bool numeric = false;
    };

    ExprPtr term() {
        std::vector<ExprPtr> factors;
        Factor f = factor();
        while (true) {
            if (at(Tok::Slash)) {
                Token slash = next();
                if (!f.numeric || f.e->kind() != ExprKind::Const)
                    throw ParseError("'/' is only allowed between two integer literals",
                                     slash.span);
                if (!at(Tok::Int))
                    throw ParseError("'/' is only allowed between two integer literals",
                                     cur().span, {"integer literal"});
                Token den = next();
                if (at(Tok::Caret))
                    throw ParseError("'/' denominator must be a bare integer literal",
                                     cur().span);
                mpq_class q = int_literal(den.text);
                if (q == 0) throw ParseError("division by zero", den.span);
                Scalar v = f.e->value() / Scalar(GaussRat(q));
                f = {make_const(v), true};
                continue;
            }
            if (at(Tok::Star)) {
                next();
                factors.push_back(std::move(f.e));
                f = factor();
                continue;
            }
            // implicit juxtaposition: numeric literal then alphabetic atom
            if (f.numeric && at(Tok::Ident) && juxtaposable(cur().text)) {
                factors.push_back(std::move(f.e));
                f = factor();
                continue;
            }
            break;
        }
        factors.push_back(std::move(f.e));
        return make_mul(std::move(factors));
    }

    static bool juxtaposable(const std::string& name) {
        return name != "sin" && name != "cos" && name != "exp";
    }

    Factor factor() {
        if (at(Tok::Minus)) {
            next();
            Factor f = factor();
            return {make_neg(std::move(f.e)), f.numeric};
        }
        return power();
    }

    Factor power() {
        Factor a = atom();
        if (at(Tok::Caret)) {
            next();
            if (!at(Tok::Int))
                throw ParseError("exponent must be a non-negative integer literal", cur().span,
                                 {"integer literal"});
            Token e = next();
            mpq_class n = int_literal(e.text);
            if (n.get_num() > 64) throw ParseError("exponent too large", e.span);
            return {make_pow(std::move(a.e), static_cast<unsigned>(n.get_num().get_ui())),
                    false};
        }
        return a;
    }

    Factor atom() {
        const Token t = cur();
        switch (t.kind) {
            case Tok::Int:
                next();
                return {make_const(Scalar(GaussRat(int_literal(t.text)))), true};
            case Tok::LParen: {
                next();
                ExprPtr e = expr();
                expect(Tok::RParen, "')'");
                return {e, e->kind() == ExprKind::Const};
            }
            case Tok::Ident:
                return ident(t);
            default:
                throw ParseError("expected an expression atom", t.span,
                                 {"number", "variable", "symbol", "'('", "sin", "cos", "exp"});
        }
    }

    Factor ident(const Token& t) {
        const std::string& name = t.text;
        if (name == "pi") {
            next();
            return {make_const(Scalar::pi()), false};
        }
        if (name == "i") {
            next();
            return {make_const(Scalar::unit_i()), false};
        }
        if (name == "sin" || name == "cos" || name == "exp") {
            next();
            expect(Tok::LParen, "'('");
            std::size_t arg_start = cur().span.start;
            ExprPtr a = expr();
            std::size_t arg_end = pos_ > 0 ? toks_[pos_ - 1].span.end : arg_start;
            expect(Tok::RParen, "')'");
            ExprKind k = name == "sin"   ? ExprKind::Sin
                         : name == "cos" ? ExprKind::Cos
                                         : ExprKind::Exp;
            try {
                return {make_trans(k, std::move(a), reg_), false};
            } catch (const InadmissibleArgument& e) {
                throw InadmissibleArgument(e.what(), SourceSpan{arg_start, arg_end});
            }
        }
        if (name.size() >= 2 && name[0] == 'z' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            int idx = 0;
            auto [p, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            (void)p;
            if (ec != std::errc() || idx < 1 || idx > m_)
                throw OutOfRangeVariable(
                    "variable " + name + " outside z1..z" + std::to_string(m_), t.span, idx);
            next();
            return {make_var(idx), false};
        }
        if (auto sym = reg_.find(name)) {
            next();
            return {make_symbol(sym), false};
        }
        throw ParseError("unknown identifier '" + name + "'", t.span,
                         {"variable", "declared symbol", "pi", "i", "sin", "cos", "exp"});
    }

    int m_;
    const SymbolRegistry& reg_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

/* ------------------------------- printing ------------------------------- */

std::string print_rec(const ExprPtr& e);

std::string print_mul_child(const ExprPtr& c) {
    std::string s = print_rec(c);
    bool parens = c->kind() == ExprKind::Add ||
                  (c->kind() == ExprKind::Const && s.find(' ') != std::string::npos) ||
                  (!s.empty() && s[0] == '-');
    return parens ? "(" + s + ")" : s;
}

std::string print_rec(const ExprPtr& e) {
    switch (e->kind()) {
        case ExprKind::Const:
            return e->value().str();
        case ExprKind::Var:
            return "z" + std::to_string(e->var());
        case ExprKind::Symbol: {
            if (e->symbol_offset_zero()) return e->symbol()->name();
            std::string s = e->symbol()->name() + "@[";
            bool first = true;
            for (const auto& o : e->symbol_offset()) {
                if (!first) s += ", ";
                s += o.str();
                first = false;
            }
            return s + "]";
        }
        case ExprKind::Add: {
            std::string out;
            for (const auto& k : e->children()) {
                std::string s = print_rec(k);
                if (out.empty()) out = s;
                else if (!s.empty() && s[0] == '-') out += " - " + s.substr(1);
                else out += " + " + s;
            }
            return out;
        }
        case ExprKind::Mul: {
            std::string out;
            bool lead_minus = false;
            const auto& kids = e->children();
            std::size_t start = 0;
            if (kids.front()->kind() == ExprKind::Const &&
                kids.front()->value() == Scalar(-1)) {
                // print -x rather than (-1)*x
                lead_minus = true;
                start = 1;
            }
            for (std::size_t k = start; k < kids.size(); ++k) {
                if (!out.empty()) out += "*";
                out += print_mul_child(kids[k]);
            }
            return lead_minus ? "-" + out : out;
        }
        case ExprKind::IntPow: {
            std::string b = print_rec(e->base());
            ExprKind bk = e->base()->kind();
            bool atom_like = bk == ExprKind::Var ||
                             (bk == ExprKind::Symbol && e->base()->symbol_offset_zero()) ||
                             bk == ExprKind::Exp || bk == ExprKind::Sin || bk == ExprKind::Cos;
            if (!atom_like) b = "(" + b + ")";
            return b + "^" + std::to_string(e->exponent());
        }
        case ExprKind::Exp:
            return "exp(" + print_rec(e->arg()) + ")";
        case ExprKind::Sin:
            return "sin(" + print_rec(e->arg()) + ")";
        case ExprKind::Cos:
            return "cos(" + print_rec(e->arg()) + ")";
    }
    return "?";
}

}  // namespace

ExprPtr parse_expr(const std::string& text, int m, const SymbolRegistry& symbols) {
    return Parser(text, m, symbols).parse();
}

ExprPtr parse_expr(const std::string& text, int m) {
    SymbolRegistry empty(m);
    return Parser(text, m, empty).parse();
}

std::string print_expr(const ExprPtr& e) { return print_rec(e); }

Scalar parse_scalar(const std::string& text) {
    SymbolRegistry empty(1);
    ExprPtr e = Parser(text, 0, empty).parse();
    if (e->kind() != ExprKind::Const)
        throw ParseError("expected a constant", SourceSpan{0, text.size()});
    return e->value();
}

SymbolDecl parse_symbol_decl(const std::string& line, int m) {
    auto toks = Lexer(line).run();
    std::size_t pos = 0;
    auto need = [&](Tok k, const std::string& what) -> const Token& {
        if (toks[pos].kind != k)
            throw ParseError("expected " + what + " in symbol declaration", toks[pos].span,
                             {what});
        return toks[pos++];
    };
    auto need_kw = [&](const std::string& kw) {
        const Token& t = need(Tok::Ident, "'" + kw + "'");
        if (t.text != kw)
            throw ParseError("expected '" + kw + "' in symbol declaration", t.span, {kw});
    };

    need_kw("symbol");
    SymbolDecl decl;
    decl.name = need(Tok::Ident, "symbol name").text;
    need_kw("depends");
    need(Tok::LBracket, "'['");
    while (true) {
        const Token& v = need(Tok::Ident, "variable");
        if (v.text.size() < 2 || v.text[0] != 'z')
            throw ParseError("expected a variable in depends list", v.span);
        int idx = std::stoi(v.text.substr(1));
        if (idx < 2 || idx > m)
            throw OutOfRangeVariable("symbol may depend only on z2..z" + std::to_string(m),
                                     v.span, idx);
        decl.depends.insert(idx);
        if (toks[pos].kind == Tok::Comma) {
            ++pos;
            continue;
        }
        break;
    }
    need(Tok::RBracket, "']'");

    while (toks[pos].kind == Tok::Ident && toks[pos].text == "shift") {
        ++pos;
        need(Tok::LParen, "'('");
        // slice scalar expressions between depth-0 commas
        std::size_t depth = 1;
        std::size_t start = pos;
        std::vector<std::pair<std::size_t, std::size_t>> pieces;
        while (depth > 0) {
            if (toks[pos].kind == Tok::End)
                throw ParseError("unterminated shift vector", toks[pos].span);
            if (toks[pos].kind == Tok::LParen) ++depth;
            if (toks[pos].kind == Tok::RParen) {
                --depth;
                if (depth == 0) break;
            }
            if (toks[pos].kind == Tok::Comma && depth == 1) {
                pieces.emplace_back(start, pos);
                start = pos + 1;
            }
            ++pos;
        }
        pieces.emplace_back(start, pos);
        ++pos;  // closing paren
        std::vector<Scalar> delta;
        for (auto [a, b] : pieces) {
            if (a >= b) throw ParseError("empty shift component", toks[a].span);
            std::string sub =
                line.substr(toks[a].span.start, toks[b - 1].span.end - toks[a].span.start);
            delta.push_back(parse_scalar(sub));
        }
        if (static_cast<int>(delta.size()) != m)
            throw ParseError("shift vector must have " + std::to_string(m) + " components",
                             toks[start < toks.size() ? start : toks.size() - 1].span);
        need_kw("adds");
        std::size_t a = pos;
        while (toks[pos].kind != Tok::End &&
               !(toks[pos].kind == Tok::Ident &&
                 (toks[pos].text == "model" || toks[pos].text == "shift")))
            ++pos;
        if (a == pos) throw ParseError("missing adds constant", toks[pos].span);
        std::string sub =
            line.substr(toks[a].span.start, toks[pos - 1].span.end - toks[a].span.start);
        decl.rules.push_back({std::move(delta), parse_scalar(sub)});
    }
    if (toks[pos].kind == Tok::Ident && toks[pos].text == "model") {
        ++pos;
        if (toks[pos].kind == Tok::End)
            throw ParseError("missing model expression", toks[pos].span);
        decl.model_text = line.substr(toks[pos].span.start);
        pos = toks.size() - 1;
    }
    if (toks[pos].kind != Tok::End)
        throw ParseError("trailing input in symbol declaration", toks[pos].span);
    return decl;
}

std::string print_poly(const Polynomial& p, const SymbolRegistry& symbols) {
    return p.str([&](int k) {
        if (k < symbols.m()) return "z" + std::to_string(k + 1);
        return symbols.at(k - symbols.m())->name();
    });
}

}  // namespace fpdde
