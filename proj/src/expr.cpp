#include "fpdde/expr.hpp"

#include <algorithm>
#include <cmath>

namespace fpdde {

bool Expr::symbol_offset_zero() const {
    for (const auto& s : offset_)
        if (!s.is_zero()) return false;
    return true;
}

ExprPtr make_const(Scalar s) {
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = ExprKind::Const;
    m.value_ = std::move(s);
    return e;
}

ExprPtr make_var(int index) {
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = ExprKind::Var;
    m.var_ = index;
    return e;
}

ExprPtr make_symbol(SymbolPtr sym, std::vector<Scalar> offset) {
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = ExprKind::Symbol;
    m.sym_ = std::move(sym);
    m.offset_ = std::move(offset);
    return e;
}

/* Sums flatten and all constants merge into one trailing term; the empty
   sum is Const(0). Canonical shape keeps print/parse round-trips stable. */
ExprPtr make_add(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    Scalar csum(0);
    for (auto& k : kids) {
        if (k->kind() == ExprKind::Add) {
            for (const auto& c : k->children()) {
                if (c->kind() == ExprKind::Const) csum = csum + c->value();
                else flat.push_back(c);
            }
        } else if (k->kind() == ExprKind::Const) {
            csum = csum + k->value();
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (flat.empty()) return make_const(csum);
    if (!csum.is_zero()) flat.push_back(make_const(csum));
    if (flat.size() == 1) return flat.front();
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = ExprKind::Add;
    m.kids_ = std::move(flat);
    return e;
}

/* Products flatten and constants merge into one leading coefficient; the
   empty product is Const(1). */
ExprPtr make_mul(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    Scalar cprod(1);
    for (auto& k : kids) {
        if (k->kind() == ExprKind::Mul) {
            for (const auto& c : k->children()) {
                if (c->kind() == ExprKind::Const) cprod = cprod * c->value();
                else flat.push_back(c);
            }
        } else if (k->kind() == ExprKind::Const) {
            cprod = cprod * k->value();
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (cprod.is_zero() || flat.empty()) return make_const(cprod);
    if (!cprod.is_one()) flat.insert(flat.begin(), make_const(cprod));
    if (flat.size() == 1) return flat.front();
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = ExprKind::Mul;
    m.kids_ = std::move(flat);
    return e;
}

ExprPtr make_pow(ExprPtr base, unsigned n) {
    if (n == 0) return make_const(Scalar(1));
    if (n == 1) return base;
    if (base->kind() == ExprKind::Const) return make_const(base->value().pow(n));
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = ExprKind::IntPow;
    m.kids_.push_back(std::move(base));
    m.ipow_ = n;
    return e;
}

bool admissible_transcendental_arg(const Polynomial& p, const SymbolRegistry& reg) {
    int m = reg.m();
    for (const auto& [mono, c] : p.terms()) {
        uint64_t symdeg = 0;
        uint64_t zdeg = 0;
        for (int k = 0; k < mono.width(); ++k) {
            if (k < m) zdeg += mono.exp(k);
            else symdeg += mono.exp(k);
        }
        if (symdeg > 1) return false;
        if (symdeg == 1 && zdeg > 0) return false;
    }
    return true;
}

ExprPtr make_trans(ExprKind kind, ExprPtr arg, const SymbolRegistry& reg) {
    auto p = expr_to_poly(arg, reg);
    if (!p || !admissible_transcendental_arg(*p, reg))
        throw InadmissibleArgument(
            "argument of sin/cos/exp must be a polynomial plus a linear combination "
            "of opaque symbols");
    auto e = std::make_shared<Expr>(Expr::Private{});
    Expr& m = *e;
    m.kind_ = kind;
    m.kids_.push_back(std::move(arg));
    return e;
}

ExprPtr make_exp(ExprPtr arg, const SymbolRegistry& reg) {
    return make_trans(ExprKind::Exp, std::move(arg), reg);
}
ExprPtr make_sin(ExprPtr arg, const SymbolRegistry& reg) {
    return make_trans(ExprKind::Sin, std::move(arg), reg);
}
ExprPtr make_cos(ExprPtr arg, const SymbolRegistry& reg) {
    return make_trans(ExprKind::Cos, std::move(arg), reg);
}

ExprPtr make_neg(ExprPtr e) {
    if (e->kind() == ExprKind::Const) return make_const(-e->value());
    return make_mul({make_const(Scalar(-1)), std::move(e)});
}

ExprPtr make_sub(ExprPtr a, ExprPtr b) {
    return make_add({std::move(a), make_neg(std::move(b))});
}

std::optional<Polynomial> expr_to_poly(const ExprPtr& e, const SymbolRegistry& reg) {
    switch (e->kind()) {
        case ExprKind::Const:
            return Polynomial::constant(e->value());
        case ExprKind::Var:
            return Polynomial::variable(e->var() - 1);
        case ExprKind::Symbol:
            if (!e->symbol_offset_zero()) return std::nullopt;
            return Polynomial::variable(reg.m() + e->symbol()->id());
        case ExprKind::Add: {
            Polynomial acc;
            for (const auto& k : e->children()) {
                auto p = expr_to_poly(k, reg);
                if (!p) return std::nullopt;
                acc = acc + *p;
            }
            return acc;
        }
        case ExprKind::Mul: {
            Polynomial acc = Polynomial::constant(Scalar(1));
            for (const auto& k : e->children()) {
                auto p = expr_to_poly(k, reg);
                if (!p) return std::nullopt;
                acc = acc * *p;
            }
            return acc;
        }
        case ExprKind::IntPow: {
            auto p = expr_to_poly(e->base(), reg);
            if (!p) return std::nullopt;
            return p->pow(e->exponent());
        }
        default:
            return std::nullopt;
    }
}

ExprPtr poly_to_expr(const Polynomial& p, const SymbolRegistry& reg) {
    if (p.is_zero()) return make_const(Scalar(0));
    std::vector<ExprPtr> terms;
    // highest terms first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [mono, c] = *it;
        std::vector<ExprPtr> factors;
        if (!c.is_one() || mono.is_unit()) factors.push_back(make_const(c));
        for (int k = 0; k < mono.width(); ++k) {
            uint32_t ex = mono.exp(k);
            if (ex == 0) continue;
            ExprPtr atom = k < reg.m() ? make_var(k + 1) : make_symbol(reg.at(k - reg.m()));
            factors.push_back(ex == 1 ? atom : make_pow(atom, ex));
        }
        terms.push_back(make_mul(std::move(factors)));
    }
    return make_add(std::move(terms));
}

void collect_symbols(const ExprPtr& e, std::map<std::string, SymbolPtr>& out) {
    switch (e->kind()) {
        case ExprKind::Symbol:
            out.emplace(e->symbol()->name(), e->symbol());
            break;
        default:
            for (const auto& k : e->children()) collect_symbols(k, out);
    }
}

bool contains_symbol_with_offset(const ExprPtr& e) {
    if (e->kind() == ExprKind::Symbol) return !e->symbol_offset_zero();
    for (const auto& k : e->children())
        if (contains_symbol_with_offset(k)) return true;
    return false;
}

bool Expr::structural_equal(const Expr& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case ExprKind::Const:
            return value_ == o.value_;
        case ExprKind::Var:
            return var_ == o.var_;
        case ExprKind::Symbol: {
            if (sym_->name() != o.sym_->name()) return false;
            if (offset_.size() != o.offset_.size()) {
                return symbol_offset_zero() && o.symbol_offset_zero();
            }
            for (std::size_t k = 0; k < offset_.size(); ++k)
                if (!(offset_[k] == o.offset_[k])) return false;
            return true;
        }
        case ExprKind::IntPow:
            if (ipow_ != o.ipow_) return false;
            [[fallthrough]];
        default: {
            if (kids_.size() != o.kids_.size()) return false;
            for (std::size_t k = 0; k < kids_.size(); ++k)
                if (!kids_[k]->structural_equal(*o.kids_[k])) return false;
            return true;
        }
    }
}

std::size_t Expr::hash() const {
    std::size_t h = static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ULL;
    switch (kind_) {
        case ExprKind::Const:
            h ^= value_.hash();
            break;
        case ExprKind::Var:
            h ^= static_cast<std::size_t>(var_) * 1000003u;
            break;
        case ExprKind::Symbol:
            h ^= std::hash<std::string>{}(sym_->name());
            for (const auto& s : offset_) h = h * 31 + s.hash();
            break;
        default:
            h ^= ipow_ * 2654435761u;
            for (const auto& k : kids_) h = h * 1000003u ^ k->hash();
    }
    return h;
}

std::complex<double> eval(const ExprPtr& e, std::span<const std::complex<double>> point,
                          const SymbolValues& symbol_values, const SymbolModels& symbol_models) {
    switch (e->kind()) {
        case ExprKind::Const:
            return e->value().value();
        case ExprKind::Var:
            return point[static_cast<std::size_t>(e->var() - 1)];
        case ExprKind::Symbol: {
            const std::string& name = e->symbol()->name();
            if (e->symbol_offset_zero()) {
                if (auto it = symbol_values.find(name); it != symbol_values.end())
                    return it->second;
            }
            if (auto it = symbol_models.find(name); it != symbol_models.end()) {
                std::vector<std::complex<double>> shifted(point.begin(), point.end());
                const auto& off = e->symbol_offset();
                for (std::size_t k = 0; k < off.size() && k < shifted.size(); ++k)
                    shifted[k] += off[k].value();
                return it->second(shifted);
            }
            throw MissingSymbol(name);
        }
        case ExprKind::Add: {
            std::complex<double> acc{0.0, 0.0};
            for (const auto& k : e->children()) acc += eval(k, point, symbol_values, symbol_models);
            return acc;
        }
        case ExprKind::Mul: {
            std::complex<double> acc{1.0, 0.0};
            for (const auto& k : e->children()) acc *= eval(k, point, symbol_values, symbol_models);
            return acc;
        }
        case ExprKind::IntPow: {
            std::complex<double> b = eval(e->base(), point, symbol_values, symbol_models);
            std::complex<double> acc{1.0, 0.0};
            for (unsigned k = 0; k < e->exponent(); ++k) acc *= b;
            return acc;
        }
        case ExprKind::Exp:
            return std::exp(eval(e->arg(), point, symbol_values, symbol_models));
        case ExprKind::Sin:
            return std::sin(eval(e->arg(), point, symbol_values, symbol_models));
        case ExprKind::Cos:
            return std::cos(eval(e->arg(), point, symbol_values, symbol_models));
    }
    throw Error("unreachable expr kind");
}

}  // namespace fpdde
