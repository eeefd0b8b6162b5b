#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fpdde/rational.hpp"

namespace fpdde {

/* Exact complex scalar: a polynomial in pi with Gaussian-rational
   coefficients, i.e. an element of Q(i)[pi]. This is the smallest ring
   containing every constant in the theorem statements and worked examples
   (components like 2*pi, pi/2, phases pi, and the pi^2 produced by
   shifting z1^2 through a pi-valued c1) that is closed under +, -, *.

   Scalars that leave the ring (division by a pi-carrying value, exp of a
   general argument, non-real cube roots of -1) are carried as inexact
   complex doubles. float_value() is always populated; it is authoritative
   only when is_exact() is false. */
class Scalar {
  public:
    Scalar() = default;
    Scalar(long n) { set_coef(0, GaussRat(n)); }
    Scalar(GaussRat g) { set_coef(0, std::move(g)); }

    static Scalar rational(long num, long den) { return Scalar(GaussRat::rational(num, den)); }
    static Scalar unit_i() { return Scalar(GaussRat::unit_i()); }
    static Scalar pi() {
        Scalar s;
        s.set_coef(1, GaussRat(1));
        return s;
    }
    // g * pi^k
    static Scalar pi_power(GaussRat g, unsigned k) {
        Scalar s;
        s.set_coef(k, std::move(g));
        return s;
    }
    static Scalar inexact(std::complex<double> v) {
        Scalar s;
        s.exact_ = false;
        s.approx_ = v;
        return s;
    }

    bool is_exact() const { return exact_; }
    bool is_zero() const { return exact_ ? coef_.empty() : approx_ == std::complex<double>(0.0, 0.0); }
    bool is_one() const { return exact_ && pi_degree() == 0 && coef_[0] == GaussRat(1); }
    // Exact and free of pi: a pure Gaussian rational.
    bool is_gaussian_rational() const { return exact_ && pi_degree() <= 0; }

    // Highest power of pi present; -1 when zero (or inexact).
    int pi_degree() const { return static_cast<int>(coef_.size()) - 1; }
    GaussRat rat_part() const { return coef(0); }
    GaussRat pi_part() const { return coef(1); }
    GaussRat coef(unsigned k) const { return k < coef_.size() ? coef_[k] : GaussRat(); }

    std::complex<double> value() const { return approx_; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    /* Division: exact when the divisor is a nonzero pure Gaussian rational;
       a pi-carrying or inexact divisor demotes the result to float. */
    Scalar operator/(const Scalar& o) const;

    Scalar pow(unsigned n) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Total order for canonical containers: exact before inexact, then
    // degree-major coefficient comparison (or (re, im) of the float).
    int cmp(const Scalar& o) const;

    std::size_t hash() const;
    std::string str() const;

  private:
    void set_coef(unsigned k, GaussRat g);
    void trim();
    void refresh_approx();

    std::vector<GaussRat> coef_;  // coef_[k] multiplies pi^k; empty == 0
    bool exact_ = true;
    std::complex<double> approx_{0.0, 0.0};
};

/* exp of a scalar. Exact exactly when the argument is i*pi*(p/q) with
   reduced q in {1, 2} (value one of +-1, +-i); everything else comes back
   as an inexact float. */
Scalar scalar_exp(const Scalar& s);

/* Splits exp(c) = unit * exp(rem) with `unit` exact (one of +-1, +-i and
   obtained from the i*pi*(k/2) component of c) and `rem` canonical: the
   imaginary part of the pi^1 coefficient reduced into [0, 1/2). Exact
   input only. Used by the normal form to fold exponent constants. */
std::pair<Scalar, Scalar> exp_const_split(const Scalar& c);

}  // namespace fpdde
