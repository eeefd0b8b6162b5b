#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpdde/errors.hpp"
#include "fpdde/poly.hpp"
#include "fpdde/symbol.hpp"

namespace fpdde {

enum class ExprKind { Const, Var, Symbol, Add, Mul, IntPow, Exp, Sin, Cos };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/* Immutable expression tree over C^m. The class is closed under the
   operations the solution families need: every tree is an exponential
   polynomial over the ring extended by the registered opaque symbols.
   Arguments of Exp/Sin/Cos are restricted at build time to
   polynomial-plus-linear-opaque form.

   A Symbol node may carry a shift offset (g evaluated at z + offset):
   these arise only when shift() meets a symbol shift not derivable from
   the registered rules, and are usable numerically but not in the exact
   normal form. */
class Expr {
  public:
    ExprKind kind() const { return kind_; }

    const Scalar& value() const { return value_; }           // Const
    int var() const { return var_; }                         // Var, 1-based
    const SymbolPtr& symbol() const { return sym_; }         // Symbol
    const std::vector<Scalar>& symbol_offset() const { return offset_; }
    bool symbol_offset_zero() const;
    const std::vector<ExprPtr>& children() const { return kids_; }
    const ExprPtr& base() const { return kids_.front(); }    // IntPow
    unsigned exponent() const { return ipow_; }              // IntPow
    const ExprPtr& arg() const { return kids_.front(); }     // Exp/Sin/Cos

    bool structural_equal(const Expr& o) const;
    std::size_t hash() const;

    // construction goes through the builders below
    struct Private {};
    explicit Expr(Private) {}

  private:
    friend ExprPtr make_const(Scalar);
    friend ExprPtr make_var(int);
    friend ExprPtr make_symbol(SymbolPtr, std::vector<Scalar>);
    friend ExprPtr make_add(std::vector<ExprPtr>);
    friend ExprPtr make_mul(std::vector<ExprPtr>);
    friend ExprPtr make_pow(ExprPtr, unsigned);
    friend ExprPtr make_trans(ExprKind, ExprPtr, const SymbolRegistry&);

    ExprKind kind_ = ExprKind::Const;
    Scalar value_;
    int var_ = 0;
    SymbolPtr sym_;
    std::vector<Scalar> offset_;
    std::vector<ExprPtr> kids_;
    unsigned ipow_ = 0;
};

ExprPtr make_const(Scalar s);
ExprPtr make_var(int index);  // 1-based z index; range checked by the parser
ExprPtr make_symbol(SymbolPtr sym, std::vector<Scalar> offset = {});
/* Flattens nested sums, folds all-constant nodes; empty -> Const(0),
   singleton -> the child itself. */
ExprPtr make_add(std::vector<ExprPtr> kids);
ExprPtr make_mul(std::vector<ExprPtr> kids);
ExprPtr make_pow(ExprPtr base, unsigned n);
/* kind is Exp, Sin or Cos; throws InadmissibleArgument when the argument
   leaves the admissible class. */
ExprPtr make_trans(ExprKind kind, ExprPtr arg, const SymbolRegistry& reg);
ExprPtr make_exp(ExprPtr arg, const SymbolRegistry& reg);
ExprPtr make_sin(ExprPtr arg, const SymbolRegistry& reg);
ExprPtr make_cos(ExprPtr arg, const SymbolRegistry& reg);
ExprPtr make_neg(ExprPtr e);
ExprPtr make_sub(ExprPtr a, ExprPtr b);

/* Conversion to the polynomial ring (slots: z vars then symbol ids).
   Fails (nullopt) on transcendental nodes or offset-carrying symbols. */
std::optional<Polynomial> expr_to_poly(const ExprPtr& e, const SymbolRegistry& reg);
ExprPtr poly_to_expr(const Polynomial& p, const SymbolRegistry& reg);

/* Admissibility of a transcendental argument: polynomial in the z's plus a
   linear combination of opaque symbols (each symbol degree <= 1, never
   multiplied by variables or other symbols). */
bool admissible_transcendental_arg(const Polynomial& p, const SymbolRegistry& reg);

void collect_symbols(const ExprPtr& e, std::map<std::string, SymbolPtr>& out);
bool contains_symbol_with_offset(const ExprPtr& e);

/* Numeric evaluation. Plain symbols read symbol_values; offset-carrying
   symbols need a model (a callable on the full shifted point). */
using SymbolModel = std::function<std::complex<double>(std::span<const std::complex<double>>)>;
using SymbolValues = std::map<std::string, std::complex<double>>;
using SymbolModels = std::map<std::string, SymbolModel>;

std::complex<double> eval(const ExprPtr& e, std::span<const std::complex<double>> point,
                          const SymbolValues& symbol_values = {},
                          const SymbolModels& symbol_models = {});

}  // namespace fpdde
