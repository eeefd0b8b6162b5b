#include "fpdde/poly.hpp"

#include <algorithm>

#include "fpdde/errors.hpp"

namespace fpdde {

Monomial Monomial::var(int idx, uint32_t exp) {
    std::vector<uint32_t> e(static_cast<std::size_t>(idx) + 1, 0u);
    e.back() = exp;
    return Monomial(std::move(e));
}

uint64_t Monomial::degree() const {
    uint64_t d = 0;
    for (auto x : e_) d += x;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<uint32_t> e(std::max(e_.size(), o.e_.size()), 0u);
    for (std::size_t k = 0; k < e.size(); ++k)
        e[k] = (k < e_.size() ? e_[k] : 0u) + (k < o.e_.size() ? o.e_[k] : 0u);
    return Monomial(std::move(e));
}

int Monomial::cmp_grlex(const Monomial& o) const {
    uint64_t da = degree(), db = o.degree();
    if (da != db) return da < db ? -1 : 1;
    std::size_t n = std::max(e_.size(), o.e_.size());
    for (std::size_t k = 0; k < n; ++k) {
        uint32_t a = k < e_.size() ? e_[k] : 0u;
        uint32_t b = k < o.e_.size() ? o.e_[k] : 0u;
        if (a != b) return a > b ? 1 : -1;  // earlier variable heavier => larger
    }
    return 0;
}

Polynomial Polynomial::constant(Scalar s) {
    Polynomial p;
    p.add_term(Monomial(), s);
    return p;
}

Polynomial Polynomial::variable(int idx) {
    Polynomial p;
    p.add_term(Monomial::var(idx), Scalar(1));
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

uint64_t Polynomial::degree() const {
    uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

uint64_t Polynomial::degree_in(int var) const {
    uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max<uint64_t>(d, m.exp(var));
    return d;
}

Scalar Polynomial::constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Scalar(0) : it->second;
}

Polynomial Polynomial::without_constant() const {
    Polynomial p = *this;
    p.terms_.erase(Monomial());
    return p;
}

int Polynomial::max_var() const {
    int mv = -1;
    for (const auto& [m, c] : terms_) mv = std::max(mv, m.width() - 1);
    return mv;
}

bool Polynomial::contains_var(int idx) const {
    for (const auto& [m, c] : terms_)
        if (m.exp(idx) > 0) return true;
    return false;
}

bool Polynomial::all_exact() const {
    for (const auto& [m, c] : terms_)
        if (!c.is_exact()) return false;
    return true;
}

void Polynomial::add_term(const Monomial& mono, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial p = *this;
    for (const auto& [m, c] : o.terms_) p.add_term(m, c);
    return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial p = *this;
    for (const auto& [m, c] : o.terms_) p.add_term(m, -c);
    return p;
}

Polynomial Polynomial::operator-() const {
    Polynomial p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial p;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) p.add_term(ma * mb, ca * cb);
    return p;
}

Polynomial Polynomial::scaled(const Scalar& s) const {
    Polynomial p;
    if (s.is_zero()) return p;
    for (const auto& [m, c] : terms_) p.add_term(m, c * s);
    return p;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(Scalar(1));
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial p;
    for (const auto& [m, c] : terms_) {
        uint32_t e = m.exp(var);
        if (e == 0) continue;
        std::vector<uint32_t> v;
        v.reserve(static_cast<std::size_t>(m.width()));
        for (int k = 0; k < m.width(); ++k) v.push_back(m.exp(k));
        v[static_cast<std::size_t>(var)] = e - 1;
        p.add_term(Monomial(std::move(v)), c * Scalar(static_cast<long>(e)));
    }
    return p;
}

Polynomial Polynomial::shifted_var(int idx, const Scalar& offset) const {
    if (offset.is_zero()) return *this;
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        uint32_t e = m.exp(idx);
        std::vector<uint32_t> rest;
        rest.reserve(static_cast<std::size_t>(std::max(m.width(), idx + 1)));
        for (int k = 0; k < std::max(m.width(), idx + 1); ++k) rest.push_back(m.exp(k));
        rest[static_cast<std::size_t>(idx)] = 0;
        Monomial base(std::move(rest));
        // (x + d)^e by the binomial theorem
        Scalar coef = c;  // binom(e, j) * d^j accumulated incrementally
        for (uint32_t j = 0; j <= e; ++j) {
            std::vector<uint32_t> v;
            for (int k = 0; k < std::max(base.width(), idx + 1); ++k) v.push_back(base.exp(k));
            v[static_cast<std::size_t>(idx)] = e - j;
            out.add_term(Monomial(std::move(v)), coef);
            if (j < e) {
                coef = coef * offset * Scalar(static_cast<long>(e - j)) /
                       Scalar(static_cast<long>(j + 1));
            }
        }
    }
    return out;
}

Polynomial Polynomial::shifted(std::span<const Scalar> offsets) const {
    Polynomial p = *this;
    for (std::size_t k = 0; k < offsets.size(); ++k)
        if (!offsets[k].is_zero()) p = p.shifted_var(static_cast<int>(k), offsets[k]);
    return p;
}

std::complex<double> Polynomial::eval(std::span<const std::complex<double>> vals) const {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        std::complex<double> t = c.value();
        for (int k = 0; k < m.width(); ++k) {
            uint32_t e = m.exp(k);
            for (uint32_t j = 0; j < e; ++j) t *= vals[static_cast<std::size_t>(k)];
        }
        acc += t;
    }
    return acc;
}

int Polynomial::cmp(const Polynomial& o) const {
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        int c = a->first.cmp_grlex(b->first);
        if (c != 0) return c;
        c = a->second.cmp(b->second);
        if (c != 0) return c;
    }
    if (a != terms_.end()) return 1;
    if (b != o.terms_.end()) return -1;
    return 0;
}

std::string Polynomial::str(const std::function<std::string(int)>& var_name) const {
    if (terms_.empty()) return "0";
    std::string out;
    // highest terms first reads naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono;
        for (int k = 0; k < m.width(); ++k) {
            uint32_t e = m.exp(k);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(k);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string cs = c.str();
        bool neg = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
            neg = true;
            cs = cs.substr(1);
        }
        std::string piece;
        if (mono.empty()) piece = cs.find(' ') != std::string::npos && terms_.size() > 1
                                      ? "(" + cs + ")" : cs;
        else if (cs == "1") piece = mono;
        else if (cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos ||
                 cs.find("pi") != std::string::npos || cs.find('*') != std::string::npos)
            piece = "(" + cs + ")*" + mono;
        else piece = cs + "*" + mono;
        if (out.empty()) out = neg ? "-" + piece : piece;
        else out += neg ? " - " + piece : " + " + piece;
    }
    return out;
}

}  // namespace fpdde
