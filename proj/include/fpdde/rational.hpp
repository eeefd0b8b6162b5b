#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace fpdde {

/* Gaussian rational a + b*i with exact mpq components. Always canonical
   (gmp keeps numerator/denominator reduced, denominator positive). */
struct GaussRat {
    mpq_class re{0};
    mpq_class im{0};

    GaussRat() = default;
    GaussRat(long n) : re(n) {}
    GaussRat(mpq_class r) : re(std::move(r)) {}
    GaussRat(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat rational(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return GaussRat(q);
    }
    static GaussRat unit_i() { return GaussRat(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    // Exact division; divisor must be nonzero.
    GaussRat operator/(const GaussRat& o) const {
        mpq_class n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }

    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    // Total order (lexicographic on (re, im)); used for canonical containers.
    int cmp(const GaussRat& o) const {
        int c = ::cmp(re, o.re);
        if (c != 0) return c;
        return ::cmp(im, o.im);
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    // Is the value an integer (real, denominator 1)?
    bool is_integer() const { return im == 0 && re.get_den() == 1; }

    std::string str() const;
    std::size_t hash() const;
};

std::string rat_str(const mpq_class& q);

}  // namespace fpdde
