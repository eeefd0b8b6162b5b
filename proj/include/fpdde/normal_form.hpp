#pragma once

#include <map>
#include <optional>
#include <string>

#include "fpdde/calculus.hpp"
#include "fpdde/expr.hpp"

namespace fpdde {

/* Exact exponential-polynomial normal form: a finite sum
       sum_k p_k(z, g) * e^{q_k(z)}
   with pairwise-distinct canonical exponent polynomials and no zero
   coefficient polynomial. The identity-to-zero decision is emptiness:
   exponentials with distinct polynomial exponents are linearly
   independent over polynomials (the Borel-type lemma the source material
   leans on), so the sum vanishes identically iff every p_k does.

   Exponent constants are canonicalized by folding the i*pi*(k/2)
   component through scalar_exp into the coefficient; any remaining
   constant (e.g. a rational phase, whose exponential is not in the exact
   scalar ring) stays inside the key, so terms merge exactly when their
   exponents differ by an exactly-foldable constant and never otherwise. */
class ExpPolyNF {
  public:
    using TermMap = std::map<Polynomial, Polynomial, PolyLess>;

    static ExpPolyNF zero() { return {}; }
    static ExpPolyNF from_poly(const Polynomial& p);
    static ExpPolyNF exponential(const Polynomial& q, const Polynomial& coeff);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    ExpPolyNF operator+(const ExpPolyNF& o) const;
    ExpPolyNF operator*(const ExpPolyNF& o) const;
    ExpPolyNF operator-() const;
    ExpPolyNF pow(unsigned n) const;

    bool operator==(const ExpPolyNF& o) const { return terms_ == o.terms_; }

    std::complex<double> eval(std::span<const std::complex<double>> point,
                              const SymbolValues& symbol_values,
                              const SymbolRegistry& reg) const;

    /* Highest term, printed: "(p) * exp(q)". Empty NF prints "0". */
    std::string leading_term_str(const SymbolRegistry& reg) const;

  private:
    void insert(const Polynomial& q, const Polynomial& p);
    TermMap terms_;
};

/* Rewrites sin/cos through the Euler form, expands, merges exponents.
   Throws ExactModeUnsupported when the expression leaves the decidable
   class: an inexact scalar anywhere, an opaque symbol inside a
   transcendental argument, or a deferred (offset-carrying) symbol. */
ExpPolyNF to_nf(const ExprPtr& e, const SymbolRegistry& reg);

inline bool is_zero(const ExpPolyNF& nf) { return nf.is_zero(); }

/* NF-equality of two expressions: to_nf(a - b) empty. */
bool nf_equal(const ExprPtr& a, const ExprPtr& b, const SymbolRegistry& reg);

struct VerificationReport {
    enum class Mode { exact, numeric };
    enum class Verdict { identity_zero, nonzero, numeric_pass, numeric_fail };

    Mode mode = Mode::exact;
    Verdict verdict = Verdict::identity_zero;
    double max_abs_residual = 0.0;
    long samples = 0;
    std::optional<std::vector<std::complex<double>>> witness_point;
    std::optional<std::complex<double>> witness_value;
    std::optional<std::string> witness_term;

    bool passed() const {
        return verdict == Verdict::identity_zero || verdict == Verdict::numeric_pass;
    }
    std::string to_json() const;  // keys sorted, stable float formatting
};

struct NumericOptions {
    double radius = 2.0;
    long samples = 100;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

/* Seeded max-|e| sampling over the closed polydisc. Deterministic for a
   fixed seed: the k-th point depends only on (seed, k), so the worker
   partition cannot change the report. */
VerificationReport numeric_verify(const ExprPtr& e, const SymbolRegistry& reg,
                                  const NumericOptions& opts,
                                  const SymbolModels& models = {});

/* Builds both residuals, tries the exact route, falls back to numeric
   sampling with the registered models when exactness is unavailable, and
   reports the stricter verdict of the two residuals. */
VerificationReport verify_system(const SystemSpec& spec, const ExprPtr& f1, const ExprPtr& f2,
                                 const SymbolRegistry& reg, const NumericOptions& opts = {},
                                 const SymbolModels& models = {});

}  // namespace fpdde
