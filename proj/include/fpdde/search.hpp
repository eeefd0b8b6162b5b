#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fpdde/calculus.hpp"
#include "fpdde/families.hpp"

namespace fpdde {

/* Bounded exponential-polynomial ansatz
     f(z) = sum_t c_t * (z-monomial_t) * e^{lambda_t . z}
   with frequencies lambda from the finite lattice {0, +-s, +-s*i : s <=
   freq_bound}^m and coefficient monomials of total degree <=
   max_poly_degree. The induced parameter vector is fixed and documented:
   for each function (f1 then f2), for each lattice frequency in
   enumeration order, for each monomial in grlex order, one (re, im) pair.
   terms_per_function caps how many exponential terms a restart activates
   (the zero frequency plus conjugate class pairs). */
struct AnsatzSpec {
    int m = 2;
    int max_poly_degree = 1;
    int freq_bound = 1;
    int terms_per_function = 3;

    std::string to_json() const;
};

/* Frequency lattice and parameter layout induced by an AnsatzSpec. */
struct AnsatzLayout {
    explicit AnsatzLayout(const AnsatzSpec& spec);

    const AnsatzSpec spec;
    std::vector<std::vector<std::complex<double>>> freqs;  // lattice order
    std::vector<std::vector<uint32_t>> monomials;          // grlex order
    std::size_t zero_freq_index = 0;
    std::vector<std::pair<std::size_t, std::size_t>> classes;  // {q, -q} index pairs

    std::size_t terms_per_fn() const { return freqs.size() * monomials.size(); }
    std::size_t dimension() const { return 4 * terms_per_fn(); }  // re/im, two fns
};

std::vector<std::vector<std::complex<double>>> default_grid(int m);

/* max over the grid of |R1| + |R2| for the functions the params encode. */
double residual_objective(const SystemSpec& spec, const AnsatzSpec& ansatz,
                          std::span<const double> params,
                          const std::vector<std::vector<std::complex<double>>>& grid);

struct SearchReport {
    SystemSpec spec;
    AnsatzSpec ansatz;
    int restarts = 0;
    double best_residual = 0.0;
    std::vector<double> best_params;
    int best_restart = -1;
    std::uint64_t seed = 0;
    double wall_time_sec = 0.0;  // excluded from the JSON so reports are seed-stable

    std::string to_json() const;
};

/* Multi-start minimization: Adam on the smooth sum-of-squares surrogate
   with analytic gradients, a damped Gauss-Newton polish of the best
   finishes, re-scored in max norm. Restart r is a pure function of
   (seed, r); restarts run concurrently and reduce by score with the
   restart index as tie-break. */
SearchReport minimize(const SystemSpec& spec, const AnsatzSpec& ansatz, int restarts,
                      std::uint64_t seed);

struct ProbeReport {
    FeasibilityVerdict verdict;
    SystemSpec spec;
    std::vector<SearchReport> ladder;
    std::vector<SearchReport> control_ladder;
    SystemSpec control_spec;
    double floor = 0.0;
    double control_floor = 0.0;

    std::string to_json() const;
};

/* Residual-minimization probe of a non-existence branch: requires
   classify(n1,m1,n2,m2) to be NonExistence (ClassifierMismatch
   otherwise), runs the default ansatz ladder (degree 1..3 x bound 1..2)
   and pairs every run with a solvable control family on the same ladder.
   Evidence, not proof. */
ProbeReport nonexistence_probe(int n1, int m1, int n2, int m2, const ShiftVector& c,
                               int restarts, std::uint64_t seed);

}  // namespace fpdde
