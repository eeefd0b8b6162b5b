#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fpdde/families.hpp"
#include "fpdde/normal_form.hpp"
#include "fpdde/parser.hpp"

using namespace fpdde;
using cplx = std::complex<double>;

namespace {

Scalar two_pi() { return Scalar::pi() * Scalar(2); }
Scalar half_pi() { return Scalar::pi() * Scalar::rational(1, 2); }

SineFamilySpec example_1_1() {
    SineFamilySpec s;
    s.m = 2;
    s.A = Scalar(1);
    s.B = Scalar(1);
    s.a_coeffs = {Scalar(1)};
    s.b_coeffs = {Scalar(1)};
    s.Q1 = Polynomial::variable(1).pow(2);
    s.Q2 = Polynomial::variable(1).pow(2) + Polynomial::constant(Scalar::pi());
    s.c = {{two_pi(), Scalar(0)}};
    s.variant = 1;
    return s;
}

SineFamilySpec first_c3_example() {
    SineFamilySpec s;
    s.m = 3;
    s.A = Scalar(1);
    s.B = Scalar(1);
    s.a_coeffs = {Scalar(1), Scalar(1)};
    s.b_coeffs = {Scalar(1), Scalar(1)};
    Polynomial diff = Polynomial::variable(1) - Polynomial::variable(2);
    s.Q1 = diff.pow(2);
    s.Q2 = diff.pow(2) + Polynomial::constant(Scalar::pi());
    s.c = {{Scalar(0), half_pi(), half_pi()}};
    s.variant = 1;
    return s;
}

SineFamilySpec second_c3_example() {
    SineFamilySpec s;
    s.m = 3;
    s.A = Scalar(1);
    s.B = Scalar(1);
    s.a_coeffs = {Scalar(1), Scalar(-1)};
    s.b_coeffs = {Scalar(1), Scalar(-1)};
    Polynomial diff = Polynomial::variable(1) - Polynomial::variable(2);
    s.Q1 = diff.pow(3);
    s.Q2 = diff.pow(3);
    s.c = {{Scalar(0), Scalar::pi(), Scalar::pi()}};
    s.variant = 2;
    return s;
}

}  // namespace

TEST_CASE("classify: the full table named by the source cases") {
    auto check = [](int n1, int m1, int n2, int m2, FamilyTag tag,
                    std::optional<NonExistenceBranch> branch = std::nullopt) {
        CAPTURE(n1);
        CAPTURE(m1);
        CAPTURE(n2);
        CAPTURE(m2);
        FeasibilityVerdict v = classify(n1, m1, n2, m2);
        CHECK(v.tag == tag);
        if (branch) {
            REQUIRE(v.branch.has_value());
            CHECK(*v.branch == *branch);
        }
    };
    check(2, 2, 2, 2, FamilyTag::SineFamily);
    check(2, 1, 2, 1, FamilyTag::QuadraticFamily);
    check(2, 2, 2, 1, FamilyTag::NonExistence, NonExistenceBranch::b2ii);
    check(2, 1, 2, 2, FamilyTag::NonExistence, NonExistenceBranch::b2ii);
    check(3, 1, 2, 1, FamilyTag::NonExistence, NonExistenceBranch::b2iii);
    check(1, 3, 1, 3, FamilyTag::NonExistence, NonExistenceBranch::b2i);
    check(4, 1, 1, 3, FamilyTag::NonExistence, NonExistenceBranch::b2iv);
    check(3, 1, 1, 2, FamilyTag::Unknown);
    check(1, 1, 4, 4, FamilyTag::ExcludedTrivial);
    check(1, 1, 1, 1, FamilyTag::ExcludedTrivial);
    // the feasibility pre-check covers quadruples no (2)-branch names
    check(3, 3, 2, 2, FamilyTag::NonExistence, NonExistenceBranch::feasibility);
    check(3, 3, 3, 3, FamilyTag::NonExistence, NonExistenceBranch::feasibility);
    // (2,1,1,2) sits in the open region
    check(2, 1, 1, 2, FamilyTag::Unknown);
}

TEST_CASE("classify: total and deterministic over all quadruples <= 6") {
    for (int n1 = 1; n1 <= 6; ++n1)
        for (int m1 = 1; m1 <= 6; ++m1)
            for (int n2 = 1; n2 <= 6; ++n2)
                for (int m2 = 1; m2 <= 6; ++m2) {
                    FeasibilityVerdict a = classify(n1, m1, n2, m2);
                    FeasibilityVerdict b = classify(n1, m1, n2, m2);
                    CHECK(a.tag == b.tag);
                    CHECK(a.branch == b.branch);
                    // solvable tags appear only at the theorem's shapes
                    if (a.tag == FamilyTag::SineFamily)
                        CHECK((n1 == 2 && m1 == 2 && n2 == 2 && m2 == 2));
                    if (a.tag == FamilyTag::QuadraticFamily)
                        CHECK((n1 == 2 && m1 == 1 && n2 == 2 && m2 == 1));
                }
}

TEST_CASE("validate_sine: first C^3 example passes variant (i) exactly") {
    auto checks = validate_sine(first_c3_example());
    CHECK(all_passed(checks));
    for (const auto& c : checks) {
        CAPTURE(c.name);
        CHECK(c.exact);
    }
}

TEST_CASE("validate_sine: second C^3 example passes variant (ii) exactly") {
    auto checks = validate_sine(second_c3_example());
    CHECK(all_passed(checks));
}

TEST_CASE("validate_sine: A=1, B=-1 at c=(2pi,0) fails the exponential condition") {
    SineFamilySpec s = example_1_1();
    s.B = Scalar(-1);
    s.b_coeffs = {Scalar(1)};
    auto checks = validate_sine(s);
    CHECK(!all_passed(checks));
    auto fails = failing_names(checks);
    CHECK(std::find(fails.begin(), fails.end(), "exp_condition_1") != fails.end());
}

TEST_CASE("solve_admissible_AB: brute force against a numeric oracle") {
    ShiftVector c{{two_pi(), Scalar(0)}};
    std::vector<Scalar> ones{Scalar(1)};
    auto got = solve_admissible_AB(2, ones, ones, c, 1);
    REQUIRE(got.size() == 2);
    CHECK(got[0].first == Scalar(1));
    CHECK(got[0].second == Scalar(1));
    CHECK(got[1].first == Scalar(-1));
    CHECK(got[1].second == Scalar(-1));

    // independent numeric enumeration of the variant-(i) conditions
    for (double a : {1.0, -1.0}) {
        for (double b : {1.0, -1.0}) {
            cplx eA = std::exp(cplx(0, 2) * (a * 2 * M_PI));
            cplx eB = std::exp(cplx(0, 2) * (b * 2 * M_PI));
            bool ok = std::abs(b * eA - a) < 1e-12 && std::abs(a * eB - b) < 1e-12;
            bool in = false;
            for (auto& [A, B] : got)
                if (A.value().real() == a && B.value().real() == b) in = true;
            CHECK(ok == in);
        }
    }

    // variant (ii) on the same data forces AB = 1
    auto got2 = solve_admissible_AB(2, ones, ones, c, 2);
    REQUIRE(got2.size() == 2);
    CHECK(got2[0].first == got2[0].second);
    CHECK(got2[1].first == got2[1].second);

    // first C^3 data contains (1,1)
    ShiftVector c3{{Scalar(0), half_pi(), half_pi()}};
    std::vector<Scalar> ones2{Scalar(1), Scalar(1)};
    auto got3 = solve_admissible_AB(3, ones2, ones2, c3, 1);
    bool has11 = false;
    for (auto& [A, B] : got3)
        if (A == Scalar(1) && B == Scalar(1)) has11 = true;
    CHECK(has11);
}

TEST_CASE("build_sine_pair: Example 1.1 reproduces the printed pair and verifies") {
    SymbolRegistry reg(2);
    auto [f1, f2] = build_sine_pair(example_1_1(), reg);
    ExprPtr w1 = parse_expr("sin(z1 + z2 + z2^2)", 2, reg);
    ExprPtr w2 = parse_expr("sin(z1 + z2 + z2^2 + pi)", 2, reg);
    CHECK(nf_equal(f1, w1, reg));
    CHECK(nf_equal(f2, w2, reg));
    VerificationReport rep = verify_system(sine_system(example_1_1()), f1, f2, reg);
    CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);
}

TEST_CASE("build_sine_pair: degenerate Q = 0, c = 0 verifies the c=0 corollary") {
    SineFamilySpec s;
    s.m = 2;
    s.A = Scalar(1);
    s.B = Scalar(1);
    s.a_coeffs = {Scalar(1)};
    s.b_coeffs = {Scalar(1)};
    s.c = ShiftVector::zero(2);
    s.variant = 1;
    SymbolRegistry reg(2);
    auto [f1, f2] = build_sine_pair(s, reg);
    CHECK(f1->structural_equal(*f2));
    VerificationReport rep = verify_system(sine_system(s), f1, f2, reg);
    CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);
}

TEST_CASE("build_sine_pair: invalid spec raises InvalidFamily with failures") {
    SineFamilySpec s = example_1_1();
    s.A = Scalar(2);
    SymbolRegistry reg(2);
    CHECK_THROWS_AS((void)build_sine_pair(s, reg), InvalidFamily);
}

TEST_CASE("validate_quadratic: the worked example passes with K = -1") {
    SymbolRegistry reg(3);
    std::vector<Scalar> d{Scalar(0), Scalar::pi(), Scalar::pi()};
    auto g = reg.declare("g", {2, 3}, {{d, Scalar(0)}});
    QuadraticFamilySpec q;
    q.m = 3;
    q.K1 = Scalar(-1);
    q.K2 = Scalar(-1);
    q.g1 = g;
    q.g2 = g;
    q.c = {{Scalar(0), Scalar::pi(), Scalar::pi()}};
    auto checks = validate_quadratic(q);
    CHECK(all_passed(checks));
    for (const auto& c : checks) CHECK(c.exact);

    // required increment is -K c1 = 0 here
    SymbolRegistry reg2(3);
    auto g2 = reg2.declare("g", {2, 3}, {{d, Scalar(0)}});
    QuadraticFamilySpec bad = q;
    bad.g1 = bad.g2 = g2;
    bad.c.c[0] = Scalar(1);  // now the rule must add -K*c1 = 1, but adds 0
    auto checks2 = validate_quadratic(bad);
    CHECK(!all_passed(checks2));
}

TEST_CASE("validate_quadratic: non-real cube roots validate numerically") {
    SymbolRegistry reg(2);
    auto g = reg.declare("g", {2}, {{{Scalar(0), Scalar(0)}, Scalar(0)}});
    QuadraticFamilySpec q;
    q.m = 2;
    q.K1 = Scalar::inexact(std::exp(cplx(0.0, M_PI / 3)));
    q.K2 = Scalar::inexact(std::exp(cplx(0.0, -M_PI / 3)));
    q.g1 = g;
    q.g2 = g;
    q.c = ShiftVector::zero(2);
    auto checks = validate_quadratic(q);
    CHECK(all_passed(checks));
    bool saw_inexact = false;
    for (const auto& c : checks)
        if (!c.exact) saw_inexact = true;
    CHECK(saw_inexact);
}

TEST_CASE("build_quadratic_pair: the worked example expression and exact verification") {
    SymbolRegistry reg(3);
    std::vector<Scalar> d{Scalar(0), Scalar::pi(), Scalar::pi()};
    auto g = reg.declare("g", {2, 3}, {{d, Scalar(0)}});
    QuadraticFamilySpec q;
    q.m = 3;
    q.K1 = Scalar(-1);
    q.K2 = Scalar(-1);
    q.g1 = g;
    q.g2 = g;
    q.c = {{Scalar(0), Scalar::pi(), Scalar::pi()}};
    auto [f1, f2] = build_quadratic_pair(q, reg);
    ExprPtr want = parse_expr("1 - 1/4*z1^2 + g*z1 - g^2", 3, reg);
    CHECK(nf_equal(f1, want, reg));
    CHECK(nf_equal(f2, want, reg));
    VerificationReport rep = verify_system(quadratic_system(q), f1, f2, reg);
    CHECK(rep.mode == VerificationReport::Mode::exact);
    CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);
}

TEST_CASE("build_quadratic_pair: zero shift covers the c = 0 corollary") {
    SymbolRegistry reg(4);
    auto g = reg.declare("g", {2, 3, 4}, {});
    QuadraticFamilySpec q;
    q.m = 4;
    q.K1 = Scalar(-1);
    q.K2 = Scalar(-1);
    q.g1 = g;
    q.g2 = g;
    q.c = ShiftVector::zero(4);
    auto [f1, f2] = build_quadratic_pair(q, reg);
    VerificationReport rep = verify_system(quadratic_system(q), f1, f2, reg);
    CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);
}

TEST_CASE("build_single_eq_sine: Example 1.2.A and controls") {
    // A = 1, A2 = 2, e^{i c1} = 1 via c1 = 2pi, c2 = 0, P = z2^3 + 1
    SymbolRegistry reg(2);
    SingleEqSineSpec s;
    s.m = 2;
    s.A = Scalar(1);
    s.coeffs = {Scalar(2)};
    s.P = Polynomial::variable(1).pow(3) + Polynomial::constant(Scalar(1));
    s.c = {{two_pi(), Scalar(0)}};
    ExprPtr f = build_single_eq_sine(s, reg);
    ExprPtr want = parse_expr("sin(z1 + 2*z2 + z2^3 + 1)", 2, reg);
    CHECK(nf_equal(f, want, reg));
    SystemSpec sys{2, 2, 2, 2, 2, s.c};
    VerificationReport rep = verify_system(sys, f, f, reg);
    CHECK(rep.mode == VerificationReport::Mode::exact);
    CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);

    // trivial: A = 1, zero everything -> sin(z1 + z2-part 0)
    SingleEqSineSpec t;
    t.m = 2;
    t.A = Scalar(1);
    t.coeffs = {Scalar(0)};
    t.c = ShiftVector::zero(2);
    ExprPtr ft = build_single_eq_sine(t, reg);
    CHECK(nf_equal(ft, parse_expr("sin(z1)", 2, reg), reg));

    // A = -1 works when c1 = pi: -e^{-i pi} = 1
    SingleEqSineSpec u;
    u.m = 2;
    u.A = Scalar(-1);
    u.coeffs = {Scalar(0)};
    u.c = {{Scalar::pi(), Scalar(0)}};
    ExprPtr fu = build_single_eq_sine(u, reg);
    SystemSpec sysu{2, 2, 2, 2, 2, u.c};
    CHECK(verify_system(sysu, fu, fu, reg).verdict ==
          VerificationReport::Verdict::identity_zero);
}

TEST_CASE("soundness: 100 random sine specs validate and verify exactly") {
    for (std::uint64_t t = 0; t < 100; ++t) {
        int m = 2 + static_cast<int>(t % 3);
        SineFamilySpec s = random_sine_spec(0x51e5eed + t * 7919, m);
        CAPTURE(t);
        auto checks = validate_sine(s);
        REQUIRE(all_passed(checks));
        SymbolRegistry reg(m);
        auto [f1, f2] = build_sine_pair(s, reg);
        VerificationReport rep = verify_system(sine_system(s), f1, f2, reg);
        CHECK(rep.mode == VerificationReport::Mode::exact);
        CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);
    }
}

TEST_CASE("soundness: 50 random quadratic specs validate and verify exactly") {
    for (std::uint64_t t = 0; t < 50; ++t) {
        int m = 2 + static_cast<int>(t % 3);
        SymbolRegistry reg(m);
        QuadraticFamilySpec q = random_quadratic_spec(0x9d0aul + t, m, reg);
        CAPTURE(t);
        auto checks = validate_quadratic(q);
        REQUIRE(all_passed(checks));
        auto [f1, f2] = build_quadratic_pair(q, reg);
        VerificationReport rep = verify_system(quadratic_system(q), f1, f2, reg);
        CHECK(rep.mode == VerificationReport::Mode::exact);
        CHECK(rep.verdict == VerificationReport::Verdict::identity_zero);
    }
}

TEST_CASE("negative control: single perturbations break verification") {
    int broke = 0;
    for (std::uint64_t t = 0; t < 30; ++t) {
        int m = 2 + static_cast<int>(t % 3);
        SineFamilySpec s = random_sine_spec(0xdead + t * 131, m);
        SymbolRegistry reg(m);
        auto [f1, f2] = build_sine_pair(s, reg);
        SystemSpec sys = sine_system(s);
        ExprPtr p1 = f1, p2 = f2;
        switch (t % 3) {
            case 0: {  // break Q2 periodicity/pairing with +z2
                SineFamilySpec s2 = s;
                s2.Q2 = s.Q2 + Polynomial::variable(1);
                Polynomial phase = Polynomial::variable(0).scaled(s2.B) + s2.Q2;
                for (std::size_t j = 0; j < s2.b_coeffs.size(); ++j)
                    phase = phase + Polynomial::variable(static_cast<int>(j) + 1)
                                        .scaled(s2.b_coeffs[j]);
                p2 = make_sin(poly_to_expr(phase, reg), reg);
                break;
            }
            case 1:  // shear the shift by pi/2
                sys.c.c[0] = sys.c.c[0] + half_pi();
                break;
            default: {  // bend one linear coefficient
                SineFamilySpec s2 = s;
                s2.b_coeffs[0] = s2.b_coeffs[0] + Scalar(1);
                Polynomial phase = Polynomial::variable(0).scaled(s2.B) + s2.Q2;
                for (std::size_t j = 0; j < s2.b_coeffs.size(); ++j)
                    phase = phase + Polynomial::variable(static_cast<int>(j) + 1)
                                        .scaled(s2.b_coeffs[j]);
                p2 = make_sin(poly_to_expr(phase, reg), reg);
                break;
            }
        }
        VerificationReport rep = verify_system(sys, p1, p2, reg);
        if (!rep.passed()) ++broke;
    }
    CHECK(broke == 30);
}
