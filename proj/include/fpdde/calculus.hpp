#pragma once

#include <utility>
#include <vector>

#include "fpdde/expr.hpp"

namespace fpdde {

/* The paper's c = (c1, ..., cm). */
struct ShiftVector {
    std::vector<Scalar> c;

    static ShiftVector zero(int m) { return {std::vector<Scalar>(static_cast<std::size_t>(m))}; }
    int m() const { return static_cast<int>(c.size()); }
};

/* Full parameterization of the system
     (d f1/d z1)^{n1} + f2^{m1}(z + c) = 1
     (d f2/d z1)^{n2} + f1^{m2}(z + c) = 1.
   Family machinery assumes n_i + m_i > 2; raw residual verification
   accepts any positive exponents. */
struct SystemSpec {
    int m = 2;
    int n1 = 2, n2 = 2, m1 = 2, m2 = 2;
    ShiftVector c;

    bool standing_hypothesis() const { return n1 + m1 > 2 && n2 + m2 > 2; }
};

/* Symbolic d/dz_i. Differentiation of an opaque symbol in one of its own
   variables is rejected (OpaqueDerivative); d/dz1 of a symbol is zero. */
ExprPtr partial(const ExprPtr& e, int var, const SymbolRegistry& reg);

/* f(z) -> f(z + c). Polynomial substitutions expand eagerly; opaque
   symbols rewrite g -> g + s through their registered rules, and a
   non-derivable symbol shift is deferred into an offset-carrying symbol
   node (numeric use only). */
ExprPtr shift(const ExprPtr& e, const ShiftVector& c, const SymbolRegistry& reg,
              bool defer_unknown = false);

/* R1 = (d f1/d z1)^{n1} + f2^{m1}(z+c) - 1 and the mirrored R2. */
std::pair<ExprPtr, ExprPtr> residuals(const SystemSpec& spec, const ExprPtr& f1,
                                      const ExprPtr& f2, const SymbolRegistry& reg,
                                      bool defer_unknown_shifts = false);

}  // namespace fpdde
