#include "fpdde/calculus.hpp"

namespace fpdde {

namespace {

void check_differentiable(const ExprPtr& e, int var) {
    if (var == 1) return;
    std::map<std::string, SymbolPtr> syms;
    collect_symbols(e, syms);
    for (const auto& [name, sym] : syms)
        if (sym->depends_on().count(var)) throw OpaqueDerivative(name, var);
}

ExprPtr poly_derivative_expr(const Polynomial& p, int var, const SymbolRegistry& reg) {
    return poly_to_expr(p.derivative(var - 1), reg);
}

ExprPtr partial_rec(const ExprPtr& e, int var, const SymbolRegistry& reg) {
    switch (e->kind()) {
        case ExprKind::Const:
            return make_const(Scalar(0));
        case ExprKind::Var:
            return make_const(Scalar(e->var() == var ? 1 : 0));
        case ExprKind::Symbol:
            // depends_on never contains z1, and var in depends_on was
            // rejected up front, so the symbol is constant here
            return make_const(Scalar(0));
        case ExprKind::Add: {
            std::vector<ExprPtr> kids;
            for (const auto& k : e->children()) kids.push_back(partial_rec(k, var, reg));
            return make_add(std::move(kids));
        }
        case ExprKind::Mul: {
            std::vector<ExprPtr> terms;
            const auto& kids = e->children();
            for (std::size_t j = 0; j < kids.size(); ++j) {
                std::vector<ExprPtr> factors;
                for (std::size_t k = 0; k < kids.size(); ++k)
                    factors.push_back(k == j ? partial_rec(kids[k], var, reg) : kids[k]);
                terms.push_back(make_mul(std::move(factors)));
            }
            return make_add(std::move(terms));
        }
        case ExprKind::IntPow: {
            unsigned n = e->exponent();
            ExprPtr db = partial_rec(e->base(), var, reg);
            return make_mul({make_const(Scalar(static_cast<long>(n))),
                             make_pow(e->base(), n - 1), std::move(db)});
        }
        case ExprKind::Exp: {
            Polynomial u = *expr_to_poly(e->arg(), reg);
            return make_mul({poly_derivative_expr(u, var, reg), e});
        }
        case ExprKind::Sin: {
            Polynomial u = *expr_to_poly(e->arg(), reg);
            return make_mul({poly_derivative_expr(u, var, reg),
                             make_cos(e->arg(), reg)});
        }
        case ExprKind::Cos: {
            Polynomial u = *expr_to_poly(e->arg(), reg);
            return make_mul({make_const(Scalar(-1)), poly_derivative_expr(u, var, reg),
                             make_sin(e->arg(), reg)});
        }
    }
    throw Error("unreachable expr kind");
}

/* Offsets over the full polynomial variable space (z vars then symbols);
   nullopt when some symbol shift is not derivable. */
std::optional<std::vector<Scalar>> full_offsets(const ExprPtr& e, const ShiftVector& c,
                                                const SymbolRegistry& reg) {
    std::vector<Scalar> off(static_cast<std::size_t>(reg.nvars()), Scalar(0));
    for (int k = 0; k < reg.m(); ++k) off[static_cast<std::size_t>(k)] = c.c[static_cast<std::size_t>(k)];
    std::map<std::string, SymbolPtr> syms;
    collect_symbols(e, syms);
    for (const auto& [name, sym] : syms) {
        auto s = sym->derive_shift(c.c);
        if (!s) return std::nullopt;
        off[static_cast<std::size_t>(reg.m() + sym->id())] = *s;
    }
    return off;
}

std::string shift_str(const ShiftVector& c) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.c.size(); ++k) {
        if (k) s += ", ";
        s += c.c[k].str();
    }
    return s + ")";
}

ExprPtr shift_rec(const ExprPtr& e, const ShiftVector& c, const SymbolRegistry& reg,
                  bool defer) {
    // polynomial subtrees substitute and expand in one step
    if (auto p = expr_to_poly(e, reg)) {
        if (auto off = full_offsets(e, c, reg)) return poly_to_expr(p->shifted(*off), reg);
    }
    switch (e->kind()) {
        case ExprKind::Add: {
            std::vector<ExprPtr> kids;
            for (const auto& k : e->children()) kids.push_back(shift_rec(k, c, reg, defer));
            return make_add(std::move(kids));
        }
        case ExprKind::Mul: {
            std::vector<ExprPtr> kids;
            for (const auto& k : e->children()) kids.push_back(shift_rec(k, c, reg, defer));
            return make_mul(std::move(kids));
        }
        case ExprKind::IntPow:
            return make_pow(shift_rec(e->base(), c, reg, defer), e->exponent());
        case ExprKind::Exp:
        case ExprKind::Sin:
        case ExprKind::Cos: {
            // a symbol under a transcendental must shift through its rules;
            // deferral has no polynomial slot to land in
            std::map<std::string, SymbolPtr> syms;
            collect_symbols(e->arg(), syms);
            for (const auto& [name, sym] : syms)
                if (!sym->derive_shift(c.c)) throw UnknownSymbolShift(name, shift_str(c));
            return make_trans(e->kind(), shift_rec(e->arg(), c, reg, defer), reg);
        }
        case ExprKind::Symbol: {
            // reachable only when the shift was not derivable
            if (!defer) throw UnknownSymbolShift(e->symbol()->name(), shift_str(c));
            const auto& dep = e->symbol()->depends_on();
            std::vector<Scalar> off = e->symbol_offset();
            off.resize(static_cast<std::size_t>(reg.m()), Scalar(0));
            for (int v : dep)
                off[static_cast<std::size_t>(v - 1)] =
                    off[static_cast<std::size_t>(v - 1)] + c.c[static_cast<std::size_t>(v - 1)];
            return make_symbol(e->symbol(), std::move(off));
        }
        default:
            return e;  // Const, Var always take the polynomial path
    }
}

}  // namespace

ExprPtr partial(const ExprPtr& e, int var, const SymbolRegistry& reg) {
    if (var < 1 || var > reg.m())
        throw Error("differentiation variable z" + std::to_string(var) + " out of range");
    check_differentiable(e, var);
    return partial_rec(e, var, reg);
}

ExprPtr shift(const ExprPtr& e, const ShiftVector& c, const SymbolRegistry& reg,
              bool defer_unknown) {
    if (c.m() != reg.m()) throw Error("shift vector arity mismatch");
    return shift_rec(e, c, reg, defer_unknown);
}

std::pair<ExprPtr, ExprPtr> residuals(const SystemSpec& spec, const ExprPtr& f1,
                                      const ExprPtr& f2, const SymbolRegistry& reg,
                                      bool defer_unknown_shifts) {
    ExprPtr d1 = partial(f1, 1, reg);
    ExprPtr d2 = partial(f2, 1, reg);
    ExprPtr s1 = shift(f1, spec.c, reg, defer_unknown_shifts);
    ExprPtr s2 = shift(f2, spec.c, reg, defer_unknown_shifts);
    ExprPtr r1 = make_add({make_pow(d1, static_cast<unsigned>(spec.n1)),
                           make_pow(s2, static_cast<unsigned>(spec.m1)),
                           make_const(Scalar(-1))});
    ExprPtr r2 = make_add({make_pow(d2, static_cast<unsigned>(spec.n2)),
                           make_pow(s1, static_cast<unsigned>(spec.m2)),
                           make_const(Scalar(-1))});
    return {r1, r2};
}

}  // namespace fpdde
