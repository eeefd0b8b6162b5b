#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpdde/calculus.hpp"
#include "fpdde/expr.hpp"

namespace fpdde {

/* ------------------------------ classifier ------------------------------ */

enum class FamilyTag { SineFamily, QuadraticFamily, NonExistence, Unknown, ExcludedTrivial };

/* 2i..2iv are the theorem's non-existence sub-conditions, checked in
   order; `feasibility` is the 1/n_i + 1/m_i >= 1 pre-check, which disposes
   of quadruples (such as n1 = m1 >= 3) that none of the four branches
   names. */
enum class NonExistenceBranch { b2i, b2ii, b2iii, b2iv, feasibility };

struct FeasibilityVerdict {
    FamilyTag tag = FamilyTag::Unknown;
    std::optional<NonExistenceBranch> branch;
    std::string clause;  // human-readable statement of the firing condition

    std::string tag_name() const;
    std::string branch_name() const;  // empty unless NonExistence
    std::string to_json() const;
};

/* Case analysis over (n1, m1, n2, m2), deterministic and total on positive
   quadruples:
     1. ExcludedTrivial when n_i + m_i <= 2 for some i;
     2. the feasibility pre-check;
     3. branches (2)(i) -> (2)(iv), first hit wins; (2)(iii) requires its
        inequality for every index with n_i > m_i (nonempty);
     4. n1 = m1 -> SineFamily (necessarily (2,2,2,2) past the pre-check);
        n_i > m_i for both -> QuadraticFamily (necessarily (2,1,2,1));
     5. the remaining mixed region is the open question: Unknown. */
FeasibilityVerdict classify(int n1, int m1, int n2, int m2);

/* ------------------------------ sine family ----------------------------- */

struct SineFamilySpec {
    int m = 2;
    Scalar A, B;
    std::vector<Scalar> a_coeffs;  // A_{12}..A_{1m}
    std::vector<Scalar> b_coeffs;  // B_{12}..B_{1m}
    Polynomial Q1, Q2;             // polynomials in z2..zm
    ShiftVector c;
    int variant = 1;  // 1 or 2, the theorem's conditions (i)/(ii)
};

struct ConstraintCheck {
    std::string name;
    bool passed = false;
    bool exact = false;  // checked in the scalar ring vs at 1e-10
    std::string detail;  // evaluated left-hand side or explanation
};

bool all_passed(const std::vector<ConstraintCheck>& checks);
std::vector<std::string> failing_names(const std::vector<ConstraintCheck>& checks);

/* The theorem's stated constraints (A^2 = B^2 = 1, 2c-periodicity of the
   Q's, the variant's exponential conditions) plus the pairing relations
   the proof's sub-cases impose (b = (AB) a and the constant phase link
   between Q2 and Q1); the stated set alone does not force a solution. */
std::vector<ConstraintCheck> validate_sine(const SineFamilySpec& spec);

/* f1 = sin(A z1 + sum A_{1j} z_j + Q1), f2 likewise; requires
   validate_sine to pass, and the built pair verifies exactly. */
std::pair<ExprPtr, ExprPtr> build_sine_pair(const SineFamilySpec& spec,
                                            const SymbolRegistry& reg);

/* Enumerates (A, B) in {1,-1}^2 against the variant's two exponential
   conditions. */
std::vector<std::pair<Scalar, Scalar>> solve_admissible_AB(
    int m, const std::vector<Scalar>& a_coeffs, const std::vector<Scalar>& b_coeffs,
    const ShiftVector& c, int variant);

/* --------------------------- quadratic family --------------------------- */

struct QuadraticFamilySpec {
    int m = 2;
    Scalar K1, K2;
    SymbolPtr g1, g2;  // may alias the same symbol
    ShiftVector c;
};

/* K_i^3 = -1 and the registered 2c increment of g_i equal to -K_i c1 (the
   sign the proof derives; see README). Exact when the scalars are exact,
   at 1e-10 otherwise. */
std::vector<ConstraintCheck> validate_quadratic(const QuadraticFamilySpec& spec);

/* f_i = 1 + (K_i/4) z1^2 + z1 g_i - K_i^2 g_i^2. */
std::pair<ExprPtr, ExprPtr> build_quadratic_pair(const QuadraticFamilySpec& spec,
                                                 const SymbolRegistry& reg);

/* ----------------------- single-equation reduction ---------------------- */

struct SingleEqSineSpec {
    int m = 2;
    Scalar A;
    std::vector<Scalar> coeffs;  // A_2..A_m
    Polynomial P;                // c-periodic (single c) in z2..zm
    ShiftVector c;
};

std::vector<ConstraintCheck> validate_single_eq_sine(const SingleEqSineSpec& spec);
/* f = sin(A z1 + sum A_j z_j + P) solving (df/dz1)^2 + f^2(z+c) = 1. */
ExprPtr build_single_eq_sine(const SingleEqSineSpec& spec, const SymbolRegistry& reg);

/* ----------------------- seeded random generators ----------------------- */

/* Valid specs by construction: the partner side is derived through the
   proof's pairing relations, Q1 is built from shift-invariant atoms
   (variables with c_j = 0, differences z_j - z_k with c_j = c_k), and c1
   is solved so the phase lands on a half-integer multiple of pi. */
SineFamilySpec random_sine_spec(std::uint64_t seed, int m);

/* Shared-symbol form (g1 = g2, K = -1) carrying the single-shift rule
   (c', c1/2), whose closure yields the required 2c increment; this is the
   exactly-verifiable member of the family. Registers one fresh symbol. */
QuadraticFamilySpec random_quadratic_spec(std::uint64_t seed, int m, SymbolRegistry& reg);

SystemSpec sine_system(const SineFamilySpec& spec);
SystemSpec quadratic_system(const QuadraticFamilySpec& spec);

}  // namespace fpdde
