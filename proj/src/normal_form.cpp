#include "fpdde/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "fpdde/parser.hpp"

namespace fpdde {

namespace {

void require_exact(const Polynomial& p, const char* where) {
    if (!p.all_exact())
        throw ExactModeUnsupported(std::string("inexact scalar in ") + where);
}

}  // namespace

ExpPolyNF ExpPolyNF::from_poly(const Polynomial& p) {
    ExpPolyNF nf;
    nf.insert(Polynomial(), p);
    return nf;
}

ExpPolyNF ExpPolyNF::exponential(const Polynomial& q, const Polynomial& coeff) {
    ExpPolyNF nf;
    nf.insert(q, coeff);
    return nf;
}

void ExpPolyNF::insert(const Polynomial& q, const Polynomial& p) {
    if (p.is_zero()) return;
    require_exact(q, "exponent polynomial");
    require_exact(p, "coefficient polynomial");
    // fold the exactly-representable part of e^{const} into the coefficient
    Scalar c0 = q.constant_term();
    Polynomial key = q;
    Polynomial coeff = p;
    if (!c0.is_zero()) {
        auto [unit, rem] = exp_const_split(c0);
        if (!(unit == Scalar(1))) coeff = coeff.scaled(unit);
        key = q.without_constant();
        if (!rem.is_zero()) key.add_term(Monomial(), rem);
    }
    auto [it, inserted] = terms_.emplace(std::move(key), coeff);
    if (!inserted) {
        Polynomial merged = it->second + coeff;
        if (merged.is_zero()) terms_.erase(it);
        else it->second = std::move(merged);
    }
}

ExpPolyNF ExpPolyNF::operator+(const ExpPolyNF& o) const {
    ExpPolyNF r = *this;
    for (const auto& [q, p] : o.terms_) r.insert(q, p);
    return r;
}

ExpPolyNF ExpPolyNF::operator*(const ExpPolyNF& o) const {
    ExpPolyNF r;
    for (const auto& [qa, pa] : terms_)
        for (const auto& [qb, pb] : o.terms_) r.insert(qa + qb, pa * pb);
    return r;
}

ExpPolyNF ExpPolyNF::operator-() const {
    ExpPolyNF r;
    for (const auto& [q, p] : terms_) r.terms_.emplace(q, -p);
    return r;
}

ExpPolyNF ExpPolyNF::pow(unsigned n) const {
    ExpPolyNF r = from_poly(Polynomial::constant(Scalar(1)));
    ExpPolyNF base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::complex<double> ExpPolyNF::eval(std::span<const std::complex<double>> point,
                                     const SymbolValues& symbol_values,
                                     const SymbolRegistry& reg) const {
    auto uses_slot = [&](int slot) {
        for (const auto& [q, p] : terms_)
            if (q.contains_var(slot) || p.contains_var(slot)) return true;
        return false;
    };
    std::vector<std::complex<double>> vals(point.begin(), point.end());
    vals.resize(static_cast<std::size_t>(reg.nvars()), {0.0, 0.0});
    for (int k = 0; k < reg.size(); ++k) {
        auto it = symbol_values.find(reg.at(k)->name());
        if (it != symbol_values.end()) vals[static_cast<std::size_t>(reg.m() + k)] = it->second;
        else if (uses_slot(reg.m() + k)) throw MissingSymbol(reg.at(k)->name());
    }
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [q, p] : terms_) acc += p.eval(vals) * std::exp(q.eval(vals));
    return acc;
}

std::string ExpPolyNF::leading_term_str(const SymbolRegistry& reg) const {
    if (terms_.empty()) return "0";
    const auto& [q, p] = *terms_.rbegin();
    if (q.is_zero()) return "(" + print_poly(p, reg) + ")";
    return "(" + print_poly(p, reg) + ") * exp(" + print_poly(q, reg) + ")";
}

namespace {

ExpPolyNF nf_rec(const ExprPtr& e, const SymbolRegistry& reg) {
    switch (e->kind()) {
        case ExprKind::Const: {
            if (!e->value().is_exact())
                throw ExactModeUnsupported("inexact constant in exact mode");
            return ExpPolyNF::from_poly(Polynomial::constant(e->value()));
        }
        case ExprKind::Var:
            return ExpPolyNF::from_poly(Polynomial::variable(e->var() - 1));
        case ExprKind::Symbol: {
            if (!e->symbol_offset_zero())
                throw ExactModeUnsupported("deferred symbol shift has no exact form");
            return ExpPolyNF::from_poly(Polynomial::variable(reg.m() + e->symbol()->id()));
        }
        case ExprKind::Add: {
            ExpPolyNF acc;
            for (const auto& k : e->children()) acc = acc + nf_rec(k, reg);
            return acc;
        }
        case ExprKind::Mul: {
            ExpPolyNF acc = ExpPolyNF::from_poly(Polynomial::constant(Scalar(1)));
            for (const auto& k : e->children()) acc = acc * nf_rec(k, reg);
            return acc;
        }
        case ExprKind::IntPow:
            return nf_rec(e->base(), reg).pow(e->exponent());
        case ExprKind::Exp:
        case ExprKind::Sin:
        case ExprKind::Cos: {
            Polynomial u = *expr_to_poly(e->arg(), reg);
            if (u.max_var() >= reg.m())
                throw ExactModeUnsupported(
                    "opaque symbol inside a transcendental argument has no exact form");
            require_exact(u, "transcendental argument");
            Polynomial iu = u.scaled(Scalar::unit_i());
            if (e->kind() == ExprKind::Exp) return ExpPolyNF::exponential(u, Polynomial::constant(Scalar(1)));
            Scalar half = Scalar::rational(1, 2);
            if (e->kind() == ExprKind::Cos) {
                // cos u = (e^{iu} + e^{-iu}) / 2
                ExpPolyNF a = ExpPolyNF::exponential(iu, Polynomial::constant(half));
                ExpPolyNF b = ExpPolyNF::exponential(-iu, Polynomial::constant(half));
                return a + b;
            }
            // sin u = (e^{iu} - e^{-iu}) / (2i)
            Scalar inv2i = Scalar(1) / (Scalar(2) * Scalar::unit_i());
            ExpPolyNF a = ExpPolyNF::exponential(iu, Polynomial::constant(inv2i));
            ExpPolyNF b = ExpPolyNF::exponential(-iu, Polynomial::constant(-inv2i));
            return a + b;
        }
    }
    throw Error("unreachable expr kind");
}

}  // namespace

ExpPolyNF to_nf(const ExprPtr& e, const SymbolRegistry& reg) { return nf_rec(e, reg); }

bool nf_equal(const ExprPtr& a, const ExprPtr& b, const SymbolRegistry& reg) {
    return to_nf(make_sub(a, b), reg).is_zero();
}

/* ----------------------------- numeric side ----------------------------- */

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double unit_double(std::uint64_t& state) {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

/* The k-th sample point in the closed polydisc of the given radius; a
   pure function of (seed, k). */
std::vector<std::complex<double>> polydisc_point(std::uint64_t seed, long k, int m,
                                                 double radius) {
    std::uint64_t state = splitmix64(seed ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(k + 1)));
    std::vector<std::complex<double>> z;
    z.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        double r = radius * std::sqrt(unit_double(state));
        double th = 2.0 * M_PI * unit_double(state);
        z.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    return z;
}

std::string json_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_complex(std::complex<double> v) {
    return "[" + json_double(v.real()) + ", " + json_double(v.imag()) + "]";
}

const char* mode_name(VerificationReport::Mode m) {
    return m == VerificationReport::Mode::exact ? "exact" : "numeric";
}

const char* verdict_name(VerificationReport::Verdict v) {
    switch (v) {
        case VerificationReport::Verdict::identity_zero: return "identity-zero";
        case VerificationReport::Verdict::nonzero: return "nonzero";
        case VerificationReport::Verdict::numeric_pass: return "numeric-pass";
        default: return "numeric-fail";
    }
}

}  // namespace

std::string VerificationReport::to_json() const {
    std::ostringstream os;
    os << "{";
    os << "\"max_abs_residual\": " << json_double(max_abs_residual);
    os << ", \"mode\": \"" << mode_name(mode) << "\"";
    os << ", \"samples\": " << samples;
    os << ", \"verdict\": \"" << verdict_name(verdict) << "\"";
    os << ", \"witness\": ";
    if (!witness_point && !witness_term) {
        os << "null";
    } else {
        os << "{";
        bool first = true;
        if (witness_point) {
            os << "\"point\": [";
            for (std::size_t k = 0; k < witness_point->size(); ++k) {
                if (k) os << ", ";
                os << json_complex((*witness_point)[k]);
            }
            os << "]";
            first = false;
        }
        if (witness_term) {
            if (!first) os << ", ";
            os << "\"term\": \"" << *witness_term << "\"";
            first = false;
        }
        if (witness_value) {
            if (!first) os << ", ";
            os << "\"value\": " << json_complex(*witness_value);
        }
        os << "}";
    }
    os << "}";
    return os.str();
}

VerificationReport numeric_verify(const ExprPtr& e, const SymbolRegistry& reg,
                                  const NumericOptions& opts, const SymbolModels& models) {
    if (opts.samples < 1) throw Error("numeric_verify needs samples >= 1");
    long n = opts.samples;
    std::vector<double> mags(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> vals(static_cast<std::size_t>(n));
    std::vector<std::vector<std::complex<double>>> pts(static_cast<std::size_t>(n));

    auto run = [&](long lo, long hi) {
        for (long k = lo; k < hi; ++k) {
            auto z = polydisc_point(opts.seed, k, reg.m(), opts.radius);
            std::complex<double> v = eval(e, z, {}, models);
            pts[static_cast<std::size_t>(k)] = std::move(z);
            vals[static_cast<std::size_t>(k)] = v;
            mags[static_cast<std::size_t>(k)] = std::abs(v);
        }
    };
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8u);
    if (n >= 256 && workers > 1) {
        std::vector<std::thread> pool;
        long chunk = (n + workers - 1) / workers;
        std::exception_ptr err;
        std::mutex err_mu;
        for (unsigned w = 0; w < workers; ++w) {
            long lo = w * chunk, hi = std::min<long>(n, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    run(lo, hi);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (err) std::rethrow_exception(err);
    } else {
        run(0, n);
    }

    long best = 0;
    for (long k = 1; k < n; ++k)
        if (mags[static_cast<std::size_t>(k)] > mags[static_cast<std::size_t>(best)]) best = k;

    VerificationReport rep;
    rep.mode = VerificationReport::Mode::numeric;
    rep.samples = n;
    rep.max_abs_residual = mags[static_cast<std::size_t>(best)];
    bool pass = rep.max_abs_residual < opts.tolerance;
    rep.verdict = pass ? VerificationReport::Verdict::numeric_pass
                       : VerificationReport::Verdict::numeric_fail;
    if (!pass) {
        rep.witness_point = pts[static_cast<std::size_t>(best)];
        rep.witness_value = vals[static_cast<std::size_t>(best)];
    }
    return rep;
}

namespace {

/* Numeric sampling of an exact-mode nonzero residual to attach a witness
   point; silently skipped when models are missing for a symbol. */
void attach_numeric_witness(VerificationReport& rep, const ExprPtr& e,
                            const SymbolRegistry& reg, const NumericOptions& opts,
                            const SymbolModels& models) {
    try {
        NumericOptions o = opts;
        VerificationReport num = numeric_verify(e, reg, o, models);
        rep.samples = num.samples;
        rep.max_abs_residual = num.max_abs_residual;
        rep.witness_point = num.witness_point;
        rep.witness_value = num.witness_value;
    } catch (const MissingSymbol&) {
    }
}

}  // namespace

VerificationReport verify_system(const SystemSpec& spec, const ExprPtr& f1, const ExprPtr& f2,
                                 const SymbolRegistry& reg, const NumericOptions& opts,
                                 const SymbolModels& models) {
    ExprPtr r1, r2;
    bool deferred = false;
    try {
        std::tie(r1, r2) = residuals(spec, f1, f2, reg, false);
    } catch (const UnknownSymbolShift&) {
        std::tie(r1, r2) = residuals(spec, f1, f2, reg, true);
        deferred = true;
    }

    if (!deferred) {
        try {
            ExpPolyNF n1 = to_nf(r1, reg);
            ExpPolyNF n2 = to_nf(r2, reg);
            VerificationReport rep;
            rep.mode = VerificationReport::Mode::exact;
            if (n1.is_zero() && n2.is_zero()) {
                rep.verdict = VerificationReport::Verdict::identity_zero;
                return rep;
            }
            rep.verdict = VerificationReport::Verdict::nonzero;
            const ExpPolyNF& bad = n1.is_zero() ? n2 : n1;
            rep.witness_term = bad.leading_term_str(reg);
            attach_numeric_witness(rep, n1.is_zero() ? r2 : r1, reg, opts, models);
            return rep;
        } catch (const ExactModeUnsupported&) {
            // fall through to sampling
        }
    }

    VerificationReport a = numeric_verify(r1, reg, opts, models);
    VerificationReport b = numeric_verify(r2, reg, opts, models);
    VerificationReport rep = a.max_abs_residual >= b.max_abs_residual ? a : b;
    rep.samples = a.samples + b.samples;
    return rep;
}

}  // namespace fpdde
