#include "fpdde/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fpdde/normal_form.hpp"
#include "fpdde/parser.hpp"

namespace fpdde {

/* ------------------------------ classifier ------------------------------ */

std::string FeasibilityVerdict::tag_name() const {
    switch (tag) {
        case FamilyTag::SineFamily: return "SineFamily";
        case FamilyTag::QuadraticFamily: return "QuadraticFamily";
        case FamilyTag::NonExistence: return "NonExistence";
        case FamilyTag::Unknown: return "Unknown";
        default: return "ExcludedTrivial";
    }
}

std::string FeasibilityVerdict::branch_name() const {
    if (!branch) return "";
    switch (*branch) {
        case NonExistenceBranch::b2i: return "2i";
        case NonExistenceBranch::b2ii: return "2ii";
        case NonExistenceBranch::b2iii: return "2iii";
        case NonExistenceBranch::b2iv: return "2iv";
        default: return "feasibility";
    }
}

std::string FeasibilityVerdict::to_json() const {
    std::ostringstream os;
    os << "{\"branch\": ";
    if (branch) os << "\"" << branch_name() << "\"";
    else os << "null";
    os << ", \"clause\": \"" << clause << "\"";
    os << ", \"tag\": \"" << tag_name() << "\"}";
    return os.str();
}

FeasibilityVerdict classify(int n1, int m1, int n2, int m2) {
    if (n1 < 1 || m1 < 1 || n2 < 1 || m2 < 1)
        throw Error("classify needs positive integers");
    const long N1 = n1, M1 = m1, N2 = n2, M2 = m2;

    if (N1 + M1 <= 2 || N2 + M2 <= 2)
        return {FamilyTag::ExcludedTrivial, std::nullopt,
                "n_i + m_i <= 2 for some i: outside the theorem's standing hypothesis"};

    // feasibility pre-check: 1/n_i + 1/m_i >= 1, i.e. n_i + m_i >= n_i m_i
    if (N1 + M1 < N1 * M1 || N2 + M2 < N2 * M2)
        return {FamilyTag::NonExistence, NonExistenceBranch::feasibility,
                "1/n_i + 1/m_i >= 1 fails for some i"};

    // (2)(i)
    if (M1 * M2 > N1 * N2)
        return {FamilyTag::NonExistence, NonExistenceBranch::b2i, "m1*m2 > n1*n2"};
    // (2)(ii)
    if ((N1 == M1 && N2 > M2) || (N2 == M2 && N1 > M1))
        return {FamilyTag::NonExistence, NonExistenceBranch::b2ii,
                "n_i = m_i and n_j > m_j for i != j"};
    // (2)(iii): for every index with n_i > m_i (at least one), n1*n2 - n_i > 2
    {
        bool g1 = N1 > M1, g2 = N2 > M2;
        bool fires = (g1 || g2) && (!g1 || N1 * N2 - N1 > 2) && (!g2 || N1 * N2 - N2 > 2);
        if (fires)
            return {FamilyTag::NonExistence, NonExistenceBranch::b2iii,
                    "n_i > m_i and n1*n2 - n_i > 2"};
    }
    // (2)(iv)
    {
        auto fires = [](long ni, long mi, long nj, long mj) {
            // index i has n_i > m_i, index j has m_j > n_j
            return ni > mi && mj > nj && ni >= 3 && mj * (ni - 2) > ni;
        };
        if (fires(N1, M1, N2, M2) || fires(N2, M2, N1, M1))
            return {FamilyTag::NonExistence, NonExistenceBranch::b2iv,
                    "n_i > m_i, m_j > n_j, n_i >= 3 and m_j > n_i/(n_i - 2)"};
    }

    if (N1 == M1)
        return {FamilyTag::SineFamily, std::nullopt,
                "n1 = m1 forces n1 = n2 = m1 = m2 = 2; sine pair family"};
    if (N1 > M1 && N2 > M2)
        return {FamilyTag::QuadraticFamily, std::nullopt,
                "n_i > m_i forces m_i = 1, n_i = 2; quadratic family"};

    return {FamilyTag::Unknown, std::nullopt,
            "mixed indices below the (2)(iv) thresholds: open question"};
}

/* ------------------------------ check helpers --------------------------- */

namespace {

constexpr double kTol = 1e-10;

ConstraintCheck scalar_eq_check(std::string name, const Scalar& lhs, const Scalar& rhs) {
    ConstraintCheck c;
    c.name = std::move(name);
    if (lhs.is_exact() && rhs.is_exact()) {
        c.exact = true;
        c.passed = lhs == rhs;
    } else {
        c.exact = false;
        c.passed = std::abs(lhs.value() - rhs.value()) <= kTol;
    }
    c.detail = "lhs = " + lhs.str();
    return c;
}

/* Is s an integer multiple of pi? */
ConstraintCheck pi_integer_check(std::string name, const Scalar& s) {
    ConstraintCheck c;
    c.name = std::move(name);
    if (s.is_exact()) {
        c.exact = true;
        c.passed = s.is_zero() ||
                   (s.pi_degree() == 1 && s.rat_part().is_zero() && s.pi_part().is_integer());
    } else {
        std::complex<double> q = s.value() / M_PI;
        c.passed = std::abs(q.imag()) <= kTol &&
                   std::abs(q.real() - std::round(q.real())) <= kTol;
    }
    c.detail = "value = " + s.str();
    return c;
}

ConstraintCheck poly_check(std::string name, bool passed, const std::string& detail,
                           bool exact = true) {
    return {std::move(name), passed, exact, detail};
}

std::vector<Scalar> z_offsets(int m, const ShiftVector& c, const Scalar& factor) {
    std::vector<Scalar> off(static_cast<std::size_t>(m), Scalar(0));
    for (int j = 1; j < m; ++j)
        off[static_cast<std::size_t>(j)] = factor * c.c[static_cast<std::size_t>(j)];
    return off;
}

Scalar phase_theta(const Scalar& lead, const std::vector<Scalar>& coeffs,
                   const ShiftVector& c) {
    Scalar th = lead * c.c[0];
    for (std::size_t j = 0; j < coeffs.size(); ++j) th = th + coeffs[j] * c.c[j + 1];
    return th;
}

Scalar exp_2i(const Scalar& theta) {
    return scalar_exp(Scalar(2) * Scalar::unit_i() * theta);
}

}  // namespace

bool all_passed(const std::vector<ConstraintCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ConstraintCheck& c) { return c.passed; });
}

std::vector<std::string> failing_names(const std::vector<ConstraintCheck>& checks) {
    std::vector<std::string> out;
    for (const auto& c : checks)
        if (!c.passed) out.push_back(c.name);
    return out;
}

/* ------------------------------ sine family ----------------------------- */

std::vector<ConstraintCheck> validate_sine(const SineFamilySpec& spec) {
    const int m = spec.m;
    if (m < 2 || spec.c.m() != m || static_cast<int>(spec.a_coeffs.size()) != m - 1 ||
        static_cast<int>(spec.b_coeffs.size()) != m - 1)
        throw Error("malformed sine family spec");
    if (spec.variant != 1 && spec.variant != 2) throw Error("variant must be 1 or 2");

    std::vector<ConstraintCheck> out;
    out.push_back(scalar_eq_check("A_squared", spec.A * spec.A, Scalar(1)));
    out.push_back(scalar_eq_check("B_squared", spec.B * spec.B, Scalar(1)));

    SymbolRegistry names(m);
    auto two_c = z_offsets(m, spec.c, Scalar(2));
    Polynomial q1s = spec.Q1.shifted(two_c);
    out.push_back(poly_check("Q1_periodic", q1s == spec.Q1,
                             "Q1(z'+2c') = " + print_poly(q1s, names)));
    Polynomial q2s = spec.Q2.shifted(two_c);
    out.push_back(poly_check("Q2_periodic", q2s == spec.Q2,
                             "Q2(z'+2c') = " + print_poly(q2s, names)));

    Scalar thA = phase_theta(spec.A, spec.a_coeffs, spec.c);
    Scalar thB = phase_theta(spec.B, spec.b_coeffs, spec.c);
    Scalar eA = exp_2i(thA);
    Scalar eB = exp_2i(thB);
    if (spec.variant == 1) {
        out.push_back(scalar_eq_check("exp_condition_1", spec.B * eA, spec.A));
        out.push_back(scalar_eq_check("exp_condition_2", spec.A * eB, spec.B));
    } else {
        out.push_back(scalar_eq_check("exp_condition_1", spec.A * spec.B * eA, Scalar(1)));
        out.push_back(scalar_eq_check("exp_condition_2", spec.A * spec.B * eB, Scalar(1)));
    }

    // pairing relations from the proof's sub-cases; without them the
    // stated conditions do not force a solution
    Scalar eps = spec.A * spec.B;
    bool pair_ok = true;
    for (int j = 0; j < m - 1; ++j) {
        Scalar want = eps * spec.a_coeffs[static_cast<std::size_t>(j)];
        const Scalar& have = spec.b_coeffs[static_cast<std::size_t>(j)];
        if (want.is_exact() && have.is_exact() ? !(want == have)
                                               : std::abs(want.value() - have.value()) > kTol)
            pair_ok = false;
    }
    out.push_back(poly_check("coeff_pairing", pair_ok, "b_coeffs vs (AB)*a_coeffs"));

    auto one_c = z_offsets(m, spec.c, Scalar(1));
    Polynomial D = spec.Q2.shifted(one_c) - spec.Q1.scaled(eps);
    if (!D.is_constant()) {
        out.push_back(poly_check("phase_pairing_1", false,
                                 "Q2(z'+c') - (AB) Q1 is not constant: " + print_poly(D, names)));
    } else {
        out.push_back(pi_integer_check("phase_pairing_1", D.constant_term() + eps * thA));
    }
    Polynomial Dp = spec.Q1.shifted(one_c) - spec.Q2.scaled(eps);
    if (!Dp.is_constant()) {
        out.push_back(poly_check("phase_pairing_2", false,
                                 "Q1(z'+c') - (AB) Q2 is not constant: " + print_poly(Dp, names)));
    } else {
        out.push_back(pi_integer_check("phase_pairing_2", Dp.constant_term() + thA));
    }
    return out;
}

namespace {

Polynomial sine_phase(const Scalar& lead, const std::vector<Scalar>& coeffs,
                      const Polynomial& Q) {
    Polynomial p = Polynomial::variable(0).scaled(lead);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        p = p + Polynomial::variable(static_cast<int>(j) + 1).scaled(coeffs[j]);
    return p + Q;
}

}  // namespace

std::pair<ExprPtr, ExprPtr> build_sine_pair(const SineFamilySpec& spec,
                                            const SymbolRegistry& reg) {
    auto checks = validate_sine(spec);
    if (!all_passed(checks))
        throw InvalidFamily("sine family constraints fail", failing_names(checks));
    if (reg.m() != spec.m) throw Error("registry dimension mismatch");
    Polynomial p1 = sine_phase(spec.A, spec.a_coeffs, spec.Q1);
    Polynomial p2 = sine_phase(spec.B, spec.b_coeffs, spec.Q2);
    return {make_sin(poly_to_expr(p1, reg), reg), make_sin(poly_to_expr(p2, reg), reg)};
}

std::vector<std::pair<Scalar, Scalar>> solve_admissible_AB(
    int m, const std::vector<Scalar>& a_coeffs, const std::vector<Scalar>& b_coeffs,
    const ShiftVector& c, int variant) {
    if (static_cast<int>(a_coeffs.size()) != m - 1 ||
        static_cast<int>(b_coeffs.size()) != m - 1 || c.m() != m)
        throw Error("malformed solve_admissible_AB input");
    std::vector<std::pair<Scalar, Scalar>> out;
    for (long a = 1; a >= -1; a -= 2) {
        for (long b = 1; b >= -1; b -= 2) {
            Scalar A(a), B(b);
            Scalar eA = exp_2i(phase_theta(A, a_coeffs, c));
            Scalar eB = exp_2i(phase_theta(B, b_coeffs, c));
            ConstraintCheck c1 = variant == 1
                                     ? scalar_eq_check("1", B * eA, A)
                                     : scalar_eq_check("1", A * B * eA, Scalar(1));
            ConstraintCheck c2 = variant == 1
                                     ? scalar_eq_check("2", A * eB, B)
                                     : scalar_eq_check("2", A * B * eB, Scalar(1));
            if (c1.passed && c2.passed) out.emplace_back(A, B);
        }
    }
    return out;
}

/* --------------------------- quadratic family --------------------------- */

std::vector<ConstraintCheck> validate_quadratic(const QuadraticFamilySpec& spec) {
    if (spec.m < 2 || spec.c.m() != spec.m || !spec.g1 || !spec.g2)
        throw Error("malformed quadratic family spec");
    std::vector<ConstraintCheck> out;
    out.push_back(scalar_eq_check("K1_cubed", spec.K1.pow(3), Scalar(-1)));
    out.push_back(scalar_eq_check("K2_cubed", spec.K2.pow(3), Scalar(-1)));

    std::vector<Scalar> two_c;
    two_c.reserve(static_cast<std::size_t>(spec.m));
    for (const auto& s : spec.c.c) two_c.push_back(Scalar(2) * s);

    const SymbolPtr gs[2] = {spec.g1, spec.g2};
    const Scalar* ks[2] = {&spec.K1, &spec.K2};
    for (int i = 0; i < 2; ++i) {
        std::string name = "g" + std::to_string(i + 1) + "_increment";
        auto got = gs[i]->derive_shift(two_c);
        // the proof pins g_i(z'+2c') - g_i(z') = -K_i c1
        Scalar want = -(*ks[i] * spec.c.c[0]);
        if (!got) {
            out.push_back(poly_check(name, false,
                                     "2c shift of '" + gs[i]->name() +
                                         "' not derivable from its rules"));
        } else {
            ConstraintCheck c = scalar_eq_check(name, *got, want);
            c.detail = "increment = " + got->str() + ", required = " + want.str();
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::pair<ExprPtr, ExprPtr> build_quadratic_pair(const QuadraticFamilySpec& spec,
                                                 const SymbolRegistry& reg) {
    auto checks = validate_quadratic(spec);
    if (!all_passed(checks))
        throw InvalidFamily("quadratic family constraints fail", failing_names(checks));
    if (reg.m() != spec.m) throw Error("registry dimension mismatch");
    auto build = [&](const Scalar& K, const SymbolPtr& g) {
        int slot = reg.m() + g->id();
        Polynomial f = Polynomial::constant(Scalar(1)) +
                       Polynomial::variable(0).pow(2).scaled(K / Scalar(4)) +
                       Polynomial::variable(0) * Polynomial::variable(slot) -
                       Polynomial::variable(slot).pow(2).scaled(K * K);
        return poly_to_expr(f, reg);
    };
    return {build(spec.K1, spec.g1), build(spec.K2, spec.g2)};
}

/* ----------------------- single-equation reduction ---------------------- */

std::vector<ConstraintCheck> validate_single_eq_sine(const SingleEqSineSpec& spec) {
    const int m = spec.m;
    if (m < 2 || spec.c.m() != m || static_cast<int>(spec.coeffs.size()) != m - 1)
        throw Error("malformed single-equation sine spec");
    std::vector<ConstraintCheck> out;
    out.push_back(scalar_eq_check("A_squared", spec.A * spec.A, Scalar(1)));
    SymbolRegistry names(m);
    auto one_c = z_offsets(m, spec.c, Scalar(1));
    Polynomial ps = spec.P.shifted(one_c);
    out.push_back(poly_check("P_periodic", ps == spec.P,
                             "P(z'+c') = " + print_poly(ps, names)));
    Scalar th = phase_theta(spec.A, spec.coeffs, spec.c);
    Scalar e = scalar_exp(Scalar::unit_i() * th);
    out.push_back(scalar_eq_check("exp_condition", spec.A * e, Scalar(1)));
    return out;
}

ExprPtr build_single_eq_sine(const SingleEqSineSpec& spec, const SymbolRegistry& reg) {
    auto checks = validate_single_eq_sine(spec);
    if (!all_passed(checks))
        throw InvalidFamily("single-equation sine constraints fail", failing_names(checks));
    if (reg.m() != spec.m) throw Error("registry dimension mismatch");
    Polynomial p = sine_phase(spec.A, spec.coeffs, spec.P);
    return make_sin(poly_to_expr(p, reg), reg);
}

/* ----------------------- seeded random generators ----------------------- */

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    long pick(long lo, long hi) {
        return lo + static_cast<long>(eng() % static_cast<unsigned long>(hi - lo + 1));
    }
    Scalar small_rational() { return Scalar::rational(pick(-4, 4), pick(1, 3)); }
    Scalar nonzero_rational() {
        Scalar s = small_rational();
        return s.is_zero() ? Scalar(1) : s;
    }
    Scalar coeff() {
        switch (pick(0, 3)) {
            case 0: return Scalar(1);
            case 1: return Scalar(-1);
            case 2: return nonzero_rational();
            default: return Scalar::unit_i() * nonzero_rational();
        }
    }
    Scalar exact_shift_component() {
        switch (pick(0, 3)) {
            case 0: return Scalar(0);
            case 1: return Scalar::pi() * Scalar::rational(pick(-2, 2), 2);
            case 2: return small_rational();
            default: return Scalar::pi() * Scalar(pick(1, 2));
        }
    }
};

/* Q built from atoms annihilated by the shift: variables with c_j = 0 and
   differences z_j - z_k with c_j = c_k. */
Polynomial random_invariant_poly(Rng& rng, int m, const ShiftVector& c) {
    std::vector<Polynomial> atoms;
    for (int j = 2; j <= m; ++j)
        if (c.c[static_cast<std::size_t>(j - 1)].is_zero())
            atoms.push_back(Polynomial::variable(j - 1));
    for (int j = 2; j <= m; ++j)
        for (int k = j + 1; k <= m; ++k)
            if (c.c[static_cast<std::size_t>(j - 1)] == c.c[static_cast<std::size_t>(k - 1)] &&
                !c.c[static_cast<std::size_t>(j - 1)].is_zero())
                atoms.push_back(Polynomial::variable(j - 1) - Polynomial::variable(k - 1));

    Polynomial q;
    if (!atoms.empty()) {
        int terms = static_cast<int>(rng.pick(1, 3));
        for (int t = 0; t < terms; ++t) {
            const Polynomial& a = atoms[static_cast<std::size_t>(
                rng.pick(0, static_cast<long>(atoms.size()) - 1))];
            q = q + a.pow(static_cast<unsigned>(rng.pick(1, 3))).scaled(rng.nonzero_rational());
        }
    }
    if (rng.pick(0, 1)) q = q + Polynomial::constant(rng.small_rational());
    return q;
}

}  // namespace

SineFamilySpec random_sine_spec(std::uint64_t seed, int m) {
    Rng rng(seed);
    SineFamilySpec spec;
    spec.m = m;
    spec.c.c.assign(static_cast<std::size_t>(m), Scalar(0));
    for (int j = 2; j <= m; ++j)
        spec.c.c[static_cast<std::size_t>(j - 1)] = rng.exact_shift_component();
    // sometimes tie a pair of shifts so difference atoms exist
    if (m >= 3 && rng.pick(0, 1))
        spec.c.c[static_cast<std::size_t>(m - 1)] = spec.c.c[static_cast<std::size_t>(m - 2)];

    spec.A = Scalar(rng.pick(0, 1) ? 1 : -1);
    for (int j = 2; j <= m; ++j) spec.a_coeffs.push_back(rng.coeff());

    // land the phase on a half-integer multiple of pi, then solve for c1
    long khalf = rng.pick(-2, 3);
    Scalar theta = Scalar::pi() * Scalar::rational(khalf, 2);
    Scalar tail(0);
    for (int j = 2; j <= m; ++j)
        tail = tail + spec.a_coeffs[static_cast<std::size_t>(j - 2)] *
                          spec.c.c[static_cast<std::size_t>(j - 1)];
    spec.c.c[0] = (theta - tail) / spec.A;

    Scalar eps(khalf % 2 == 0 ? 1 : -1);
    spec.B = eps * spec.A;
    for (const auto& a : spec.a_coeffs) spec.b_coeffs.push_back(eps * a);

    spec.Q1 = random_invariant_poly(rng, m, spec.c);
    long k1 = rng.pick(-2, 2);
    Scalar kappa = Scalar::pi() * Scalar(k1) - eps * theta;
    std::vector<Scalar> minus_c(static_cast<std::size_t>(m), Scalar(0));
    for (int j = 1; j < m; ++j) minus_c[static_cast<std::size_t>(j)] = -spec.c.c[static_cast<std::size_t>(j)];
    spec.Q2 = spec.Q1.shifted(minus_c).scaled(eps) + Polynomial::constant(kappa);
    spec.variant = static_cast<int>(rng.pick(1, 2));
    return spec;
}

QuadraticFamilySpec random_quadratic_spec(std::uint64_t seed, int m, SymbolRegistry& reg) {
    Rng rng(seed);
    QuadraticFamilySpec spec;
    spec.m = m;
    spec.K1 = Scalar(-1);
    spec.K2 = Scalar(-1);
    spec.c.c.assign(static_cast<std::size_t>(m), Scalar(0));
    switch (rng.pick(0, 3)) {
        case 0: spec.c.c[0] = Scalar(0); break;
        case 1: spec.c.c[0] = rng.small_rational(); break;
        case 2: spec.c.c[0] = Scalar::pi() * Scalar::rational(rng.pick(-2, 2), 2); break;
        default: spec.c.c[0] = Scalar::unit_i() * rng.nonzero_rational(); break;
    }
    for (int j = 2; j <= m; ++j)
        spec.c.c[static_cast<std::size_t>(j - 1)] = rng.exact_shift_component();

    std::set<int> depends;
    for (int j = 2; j <= m; ++j)
        if (rng.pick(0, 1)) depends.insert(j);
    if (depends.empty()) depends.insert(2);

    // single-shift rule (c', c1/2); its closure carries the 2c increment.
    // When c' vanishes on depends_on the rule degenerates and the family
    // only exists with c1 = 0.
    std::vector<Scalar> delta(static_cast<std::size_t>(m), Scalar(0));
    bool restricted_zero = true;
    for (int v : depends) {
        delta[static_cast<std::size_t>(v - 1)] = spec.c.c[static_cast<std::size_t>(v - 1)];
        if (!spec.c.c[static_cast<std::size_t>(v - 1)].is_zero()) restricted_zero = false;
    }
    std::vector<ShiftRule> rules;
    if (restricted_zero) spec.c.c[0] = Scalar(0);
    else rules.push_back({std::move(delta), spec.c.c[0] / Scalar(2)});

    std::string name = "g" + std::to_string(reg.size() + 1);
    auto g = reg.declare(name, depends, rules);
    spec.g1 = g;
    spec.g2 = g;
    return spec;
}

SystemSpec sine_system(const SineFamilySpec& spec) {
    return {spec.m, 2, 2, 2, 2, spec.c};
}

SystemSpec quadratic_system(const QuadraticFamilySpec& spec) {
    return {spec.m, 2, 2, 1, 1, spec.c};
}

}  // namespace fpdde
