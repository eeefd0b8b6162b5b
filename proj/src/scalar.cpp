#include "fpdde/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "fpdde/errors.hpp"

namespace fpdde {

namespace {
constexpr double kPi = std::numbers::pi;

std::complex<double> eval_coeffs(const std::vector<GaussRat>& coef) {
    std::complex<double> acc{0.0, 0.0};
    double p = 1.0;
    for (const auto& g : coef) {
        acc += g.to_complex() * p;
        p *= kPi;
    }
    return acc;
}
}  // namespace

void Scalar::set_coef(unsigned k, GaussRat g) {
    if (coef_.size() <= k) coef_.resize(k + 1);
    coef_[k] = std::move(g);
    trim();
    refresh_approx();
}

void Scalar::trim() {
    while (!coef_.empty() && coef_.back().is_zero()) coef_.pop_back();
}

void Scalar::refresh_approx() {
    if (exact_) approx_ = eval_coeffs(coef_);
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (!exact_ || !o.exact_) return inexact(approx_ + o.approx_);
    Scalar r;
    r.coef_.resize(std::max(coef_.size(), o.coef_.size()));
    for (std::size_t k = 0; k < r.coef_.size(); ++k) r.coef_[k] = coef(k) + o.coef(k);
    r.trim();
    // Compose float parts rather than re-evaluating, so float_value tracks
    // the numeric composition of the operands.
    r.approx_ = approx_ + o.approx_;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    if (!exact_) return inexact(-approx_);
    Scalar r;
    r.coef_.resize(coef_.size());
    for (std::size_t k = 0; k < coef_.size(); ++k) r.coef_[k] = -coef_[k];
    r.approx_ = -approx_;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    if (!exact_ || !o.exact_) return inexact(approx_ * o.approx_);
    Scalar r;
    if (coef_.empty() || o.coef_.empty()) return r;
    r.coef_.resize(coef_.size() + o.coef_.size() - 1);
    for (std::size_t a = 0; a < coef_.size(); ++a)
        for (std::size_t b = 0; b < o.coef_.size(); ++b)
            r.coef_[a + b] = r.coef_[a + b] + coef_[a] * o.coef_[b];
    r.trim();
    r.approx_ = approx_ * o.approx_;
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    if (exact_ && o.is_gaussian_rational() && !o.is_zero()) {
        Scalar r;
        r.coef_.resize(coef_.size());
        for (std::size_t k = 0; k < coef_.size(); ++k) r.coef_[k] = coef_[k] / o.coef_[0];
        r.trim();
        r.approx_ = approx_ / o.approx_;
        return r;
    }
    return inexact(approx_ / o.approx_);
}

Scalar Scalar::pow(unsigned n) const {
    Scalar r(1);
    Scalar base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    if (exact_ != o.exact_) return false;
    if (exact_) return coef_ == o.coef_;
    return approx_ == o.approx_;
}

int Scalar::cmp(const Scalar& o) const {
    if (exact_ != o.exact_) return exact_ ? -1 : 1;
    if (exact_) {
        std::size_t n = std::max(coef_.size(), o.coef_.size());
        // degree-major so that higher pi powers order after lower ones
        for (std::size_t k = n; k-- > 0;) {
            int c = coef(static_cast<unsigned>(k)).cmp(o.coef(static_cast<unsigned>(k)));
            if (c != 0) return c;
        }
        return 0;
    }
    if (approx_.real() != o.approx_.real()) return approx_.real() < o.approx_.real() ? -1 : 1;
    if (approx_.imag() != o.approx_.imag()) return approx_.imag() < o.approx_.imag() ? -1 : 1;
    return 0;
}

std::size_t Scalar::hash() const {
    if (!exact_) {
        auto h = std::hash<double>{}(approx_.real());
        auto g = std::hash<double>{}(approx_.imag());
        return h * 1315423911u ^ g;
    }
    std::size_t h = 0x51ed2701;
    for (const auto& g : coef_) h = h * 1000003u ^ g.hash();
    return h;
}

namespace {
/* One product piece q * suffix, parser-compatible: fractions that multiply
   something get parenthesized, e.g. "(1/2)*pi*i". */
std::string rat_piece(const mpq_class& q, const std::string& suffix) {
    if (suffix.empty()) return rat_str(q);
    if (q == 1) return suffix;
    if (q == -1) return "-" + suffix;
    std::string r = rat_str(q);
    if (q.get_den() != 1) {
        bool neg = q < 0;
        mpq_class a = neg ? mpq_class(-q) : q;
        return (neg ? "-(" : "(") + rat_str(a) + ")*" + suffix;
    }
    return r + "*" + suffix;
}
}  // namespace

std::string Scalar::str() const {
    if (!exact_) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g%+.17g*i", approx_.real(), approx_.imag());
        return buf;
    }
    if (coef_.empty()) return "0";
    std::vector<std::string> pieces;
    for (std::size_t k = 0; k < coef_.size(); ++k) {
        std::string p = k == 0 ? "" : (k == 1 ? "pi" : "pi^" + std::to_string(k));
        if (coef_[k].re != 0) pieces.push_back(rat_piece(coef_[k].re, p));
        if (coef_[k].im != 0) pieces.push_back(rat_piece(coef_[k].im, p.empty() ? "i" : p + "*i"));
    }
    std::string out;
    for (const auto& piece : pieces) {
        if (out.empty()) out = piece;
        else if (piece[0] == '-') out += " - " + piece.substr(1);
        else out += " + " + piece;
    }
    return out;
}

Scalar scalar_exp(const Scalar& s) {
    if (s.is_zero()) return Scalar(1);
    if (s.is_exact() && s.pi_degree() == 1 && s.rat_part().is_zero()) {
        GaussRat w = s.pi_part();
        if (w.re == 0) {
            // argument is i*pi*v with rational v
            mpq_class v = w.im;
            if (v.get_den() == 1 || v.get_den() == 2) {
                mpz_class halves = v.get_num() * (2 / v.get_den());  // v*2, an integer
                unsigned r = mpz_class(((halves % 4) + 4) % 4).get_ui();
                switch (r) {
                    case 0: return Scalar(1);
                    case 1: return Scalar::unit_i();
                    case 2: return Scalar(-1);
                    default: return -Scalar::unit_i();
                }
            }
        }
    }
    return Scalar::inexact(std::exp(s.value()));
}

std::pair<Scalar, Scalar> exp_const_split(const Scalar& c) {
    if (!c.is_exact()) throw ExactModeUnsupported("exp_const_split on inexact scalar");
    GaussRat w = c.pi_part();
    // foldable component: i*pi*(k/2) with k = floor(2*Im(w))
    mpq_class v = w.im;
    mpq_class two_v = v * 2;
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), two_v.get_num().get_mpz_t(), two_v.get_den().get_mpz_t());
    mpq_class fold_v = mpq_class(k) / 2;
    Scalar fold = Scalar::pi_power(GaussRat(mpq_class(0), fold_v), 1);
    Scalar rem = c - fold;
    return {scalar_exp(fold), rem};
}

}  // namespace fpdde
