#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fpdde/scalar.hpp"
#include "fpdde/errors.hpp"

using namespace fpdde;

namespace {
Scalar random_exact(std::mt19937_64& rng) {
    auto small = [&](int lo, int hi) {
        return static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)) + lo;
    };
    GaussRat a(GaussRat::rational(small(-6, 6), small(1, 4)).re,
               GaussRat::rational(small(-6, 6), small(1, 4)).re);
    Scalar s(a);
    if (rng() % 3 == 0) s = s + Scalar::pi_power(GaussRat::rational(small(-4, 4), small(1, 3)).re, 1);
    return s;
}
}  // namespace

TEST_CASE("gaussian rational arithmetic is exact") {
    GaussRat a = GaussRat::rational(1, 3);
    GaussRat b(GaussRat::rational(1, 6).re, mpq_class(2));
    CHECK(a + b == GaussRat(GaussRat::rational(1, 2).re, mpq_class(2)));
    CHECK((a * GaussRat(3)).re == 1);
    GaussRat i = GaussRat::unit_i();
    CHECK(i * i == GaussRat(-1));
    CHECK((GaussRat(1) + i) / (GaussRat(1) + i) == GaussRat(1));
}

TEST_CASE("scalar ring closure and pi handling") {
    Scalar pi = Scalar::pi();
    Scalar x = Scalar::rational(1, 2) + pi * Scalar(2);
    CHECK(x.is_exact());
    CHECK(x.rat_part() == GaussRat::rational(1, 2));
    CHECK(x.pi_part() == GaussRat(2));
    // pi*pi stays exact (degree two), division by pi demotes
    Scalar sq = pi * pi;
    CHECK(sq.is_exact());
    CHECK(sq.pi_degree() == 2);
    CHECK(sq.value().real() == doctest::Approx(M_PI * M_PI));
    Scalar d = Scalar(1) / pi;
    CHECK(!d.is_exact());
    CHECK(d.value().real() == doctest::Approx(1.0 / M_PI));
    // division by a pure Gaussian rational is closed
    Scalar q = (pi * Scalar(3)) / Scalar::rational(3, 2);
    CHECK(q.is_exact());
    CHECK(q.pi_part() == GaussRat(2));
}

TEST_CASE("exact equality is decidable and componentwise") {
    Scalar a = Scalar::rational(2, 4);
    Scalar b = Scalar::rational(1, 2);
    CHECK(a == b);
    CHECK(a != Scalar::rational(1, 3));
    CHECK(Scalar::pi_power(GaussRat(1), 1) != Scalar(3));
}

TEST_CASE("scalar_exp canonicalizes i*pi rationals with denominator 1 or 2") {
    // e^{4*pi*i} = 1
    Scalar four_pi_i = Scalar::pi_power(GaussRat(mpq_class(0), mpq_class(4)), 1);
    Scalar r = scalar_exp(four_pi_i);
    CHECK(r.is_exact());
    CHECK(r == Scalar(1));
    // e^{pi*i} = -1
    Scalar pi_i = Scalar::pi_power(GaussRat(mpq_class(0), mpq_class(1)), 1);
    CHECK(scalar_exp(pi_i) == Scalar(-1));
    // e^{(1/2)pi*i} = i, e^{(3/2)pi*i} = -i, e^{-(1/2)pi*i} = -i
    auto half = [](long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return Scalar::pi_power(GaussRat(mpq_class(0), q), 1);
    };
    CHECK(scalar_exp(half(1, 2)) == Scalar::unit_i());
    CHECK(scalar_exp(half(3, 2)) == -Scalar::unit_i());
    CHECK(scalar_exp(half(-1, 2)) == -Scalar::unit_i());
    // e^{i} is inexact: cos 1 + i sin 1
    Scalar e_i = scalar_exp(Scalar(GaussRat(mpq_class(0), mpq_class(1))));
    CHECK(!e_i.is_exact());
    CHECK(e_i.value().real() == doctest::Approx(std::cos(1.0)));
    CHECK(e_i.value().imag() == doctest::Approx(std::sin(1.0)));
    // e^{i*pi/3} leaves the Gaussian-rational field
    CHECK(!scalar_exp(half(1, 3)).is_exact());
}

TEST_CASE("exp_const_split folds the half-integer pi part") {
    // c = 1 + (7/3)pi*i: foldable (2)pi*i -> 1? floor(2*7/3)/2 = floor(14/3)/2 = 4/2 = 2
    Scalar c = Scalar(1) + Scalar::pi_power(GaussRat(mpq_class(0), mpq_class(7) / 3), 1);
    auto [unit, rem] = exp_const_split(c);
    CHECK(unit == Scalar(1));
    // remainder keeps 1 + (1/3)pi*i
    CHECK(rem.rat_part() == GaussRat(1));
    CHECK(rem.pi_part() == GaussRat(mpq_class(0), mpq_class(1) / 3));
    // exp(c) == unit * exp(rem) numerically
    auto lhs = std::exp(c.value());
    auto rhs = unit.value() * std::exp(rem.value());
    CHECK(std::abs(lhs - rhs) < 1e-12);

    // negative case: -1/3 folds to -1/2 + remainder 1/6
    Scalar d = Scalar::pi_power(GaussRat(mpq_class(0), mpq_class(-1) / 3), 1);
    auto [u2, r2] = exp_const_split(d);
    CHECK(u2 == -Scalar::unit_i());
    CHECK(r2.pi_part() == GaussRat(mpq_class(0), mpq_class(1) / 6));
}

TEST_CASE("float value tracks exact composition within 1e-12 relative") {
    std::mt19937_64 rng(20240811);
    for (int t = 0; t < 1000; ++t) {
        Scalar a = random_exact(rng);
        Scalar b = random_exact(rng);
        for (int op = 0; op < 3; ++op) {
            Scalar r = op == 0 ? a + b : op == 1 ? a - b : a * b;
            std::complex<double> f = op == 0 ? a.value() + b.value()
                                   : op == 1 ? a.value() - b.value()
                                             : a.value() * b.value();
            double scale = std::max(1.0, std::abs(f));
            CHECK(std::abs(r.value() - f) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("total order is consistent") {
    Scalar a = Scalar::rational(1, 2);
    Scalar b = Scalar(1);
    CHECK(a.cmp(b) != 0);
    CHECK(a.cmp(b) == -b.cmp(a));
    CHECK(a.cmp(a) == 0);
    CHECK(Scalar::inexact({1.0, 0.0}).cmp(a) > 0);  // exact orders first
}

TEST_CASE("scalar printing is canonical") {
    Scalar s = Scalar::pi_power(GaussRat(mpq_class(0), mpq_class(1) / 2), 1);
    CHECK(s.str() == "(1/2)*pi*i");
    CHECK(Scalar(-1).str() == "-1");
    CHECK((Scalar::pi() * Scalar::pi()).str() == "pi^2");
    CHECK(Scalar(0).str() == "0");
    CHECK((Scalar::rational(3, 4) + Scalar::unit_i() * Scalar::rational(1, 2)).str() ==
          "3/4 + (1/2)*i");
}
