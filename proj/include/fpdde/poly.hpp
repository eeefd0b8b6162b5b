#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fpdde/scalar.hpp"

namespace fpdde {

/* Exponent vector, trailing zeros trimmed. Variable slots are global:
   0..m-1 hold z1..zm, slot m+k holds the opaque symbol with id k. */
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::vector<uint32_t> e) : e_(std::move(e)) { trim(); }
    static Monomial var(int idx, uint32_t exp = 1);

    uint32_t exp(int idx) const {
        return idx < static_cast<int>(e_.size()) ? e_[static_cast<std::size_t>(idx)] : 0u;
    }
    int width() const { return static_cast<int>(e_.size()); }
    uint64_t degree() const;
    bool is_unit() const { return e_.empty(); }

    Monomial operator*(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return e_ == o.e_; }

    /* graded lexicographic: total degree first, then variable order
       z1 < z2 < ... < symbols. */
    int cmp_grlex(const Monomial& o) const;

  private:
    void trim() {
        while (!e_.empty() && e_.back() == 0) e_.pop_back();
    }
    std::vector<uint32_t> e_;
};

struct MonoGrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.cmp_grlex(b) < 0; }
};

/* Sparse multivariate polynomial over Scalar in canonical form: grlex-keyed
   map with no zero coefficients. */
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Scalar, MonoGrlexLess>;

    Polynomial() = default;
    static Polynomial constant(Scalar s);
    static Polynomial variable(int idx);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    uint64_t degree() const;
    uint64_t degree_in(int var) const;
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    Scalar constant_term() const;
    Polynomial without_constant() const;
    // largest variable slot present, -1 when constant
    int max_var() const;
    bool contains_var(int idx) const;
    bool all_exact() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Scalar& s) const;
    Polynomial pow(unsigned n) const;
    Polynomial derivative(int var) const;

    /* Substitute var `idx` by (var + offset); binomial-expands eagerly. */
    Polynomial shifted_var(int idx, const Scalar& offset) const;
    /* Simultaneous x_i -> x_i + offsets[i] for every slot with a nonzero
       offset. */
    Polynomial shifted(std::span<const Scalar> offsets) const;

    std::complex<double> eval(std::span<const std::complex<double>> vals) const;

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    int cmp(const Polynomial& o) const;

    void add_term(const Monomial& mono, const Scalar& c);
    std::string str(const std::function<std::string(int)>& var_name) const;

  private:
    TermMap terms_;
};

struct PolyLess {
    bool operator()(const Polynomial& a, const Polynomial& b) const { return a.cmp(b) < 0; }
};

}  // namespace fpdde
