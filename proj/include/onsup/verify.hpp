#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "onsup/core.hpp"
#include "onsup/mechanisms.hpp"
#include "onsup/rational.hpp"
#include "onsup/rng.hpp"

namespace onsup {

// Runs a mechanism on a raw (unsorted) bid vector. Runners must satisfy the
// engine's prefix semantics: the sales for supply ell are the first ell
// sales of the full-supply run, at unchanged prices.
using MechanismRunner =
    std::function<Outcome(const std::vector<double>& raw_values, int ell,
                          RandomSeed seed)>;

MechanismRunner make_runner(const MechanismSpec& spec);
// Negative controls for the testers.
MechanismRunner first_price_control(int g);      // charges winners their own bid
MechanismRunner discriminatory_control(int g);   // per-sale prices

struct TruthfulnessWitness {
    int bidder = 0;  // original id, 1-based
    double true_value = 0.0;
    double deviating_bid = 0.0;
    int ell = 0;
    RandomSeed seed;
    double utility_truthful = 0.0;
    double utility_deviating = 0.0;
};

struct EnvyWitness {
    int ell = 0;
    RandomSeed seed;
    std::string message;
};

struct ViolationReport {
    std::string kind;  // "truthfulness", "envy", "price-uniformity"
    std::optional<TruthfulnessWitness> truthfulness;
    std::optional<EnvyWitness> envy;

    bool empty() const { return !truthfulness && !envy; }
    std::string describe() const;
};

// Default per-bidder deviation grid:
// {0} u {v_j, v_j +- eps : all j} u {v_i +- eps} u {2 * sum v_j}.
std::vector<double> default_deviation_grid(const std::vector<double>& raw_values,
                                           int bidder, double eps_rel = 1e-6);

// For every bidder, grid deviation, ell in 0..n and seed: truthful reporting
// must not lose more than tol utility. Returns the first witness found.
ViolationReport check_truthful(const MechanismRunner& runner,
                               const std::vector<double>& raw_values,
                               const std::vector<RandomSeed>& seeds,
                               double tol = 1e-9, double eps_rel = 1e-6);

// Envy-freeness at ell = n (uniform price, winners above it, losers below)
// plus price uniformity at every ell < n.
ViolationReport check_online_envy_free(const MechanismRunner& runner,
                                       const std::vector<double>& raw_values,
                                       const std::vector<RandomSeed>& seeds,
                                       double tol = 1e-9);

struct RatioEntry {
    int ell = 0;
    double opt = 0.0;
    double welfare = 0.0;  // E_r[W] at this ell
};

struct RatioReport {
    double ratio = 0.0;
    std::vector<RatioEntry> per_ell;
    std::string mode;  // "adversarial" or "stochastic"
    double std_error = 0.0;
};

// max over ell of OPT_ell / E_r[W]; exact over mechanism randomness.
RatioReport adversarial_ratio(const MechanismSpec& spec, const ValueProfile& profile);
// E[OPT] / E_{l,r}[W]; exact, or Monte Carlo with standard error.
RatioReport stochastic_ratio(const MechanismSpec& spec, const ValueProfile& profile,
                             const SupplyDistribution& d);
RatioReport stochastic_ratio_mc(const MechanismSpec& spec, const ValueProfile& profile,
                                const SupplyDistribution& d, int trials,
                                RandomSeed seed, int jobs = 1);

struct LemmaCheck {
    double lhs = 0.0;
    bool holds = false;
};

// lhs = sum_{i=s+1}^{n} i*h_i * prod_{j=s+1}^{i-1}(1-h_j), h given for
// indices s+1..n; holds iff lhs <= 3s+1 + tol. Every h_i must lie in [1/s, 1].
LemmaCheck check_lemma_3s1(int s, const std::vector<double>& h, double tol = 1e-9);

struct Bound5Check {
    double min_bound = 0.0;
    double direct_ratio = 0.0;
    bool holds = false;
};

// min_s Bound(s) and expected_opt / best_fixed_supply value, both <= 5 + tol
// for MHR distributions. Throws std::invalid_argument when d is not MHR.
Bound5Check check_bound5(const SupplyDistribution& d, const ValueProfile& profile,
                         double tol = 1e-9);

struct EnvyConstraints {
    bool c1_holds = false;
    bool c2_holds = false;
    Rat lhs1, rhs1, lhs2, rhs2;
};

// Exact evaluation of n*c >= (n-1)*log2(n)/(2a) - n and
// (c+1) * sum_{i=1}^n q^(i-1) >= (n-1)/(2a) with q = (n - 2^(c+1))/(n-1).
// lhs2/rhs2 report the second constraint multiplied through by
// 2*alpha * (n-1)^(n-1) * (2^(c+1)-1), which keeps both sides integral and
// cheap to normalize.
EnvyConstraints envy_free_constraints(int n, int c, const Rat& alpha);

// Sweep helpers for the property suites.
SupplyDistribution random_mhr_distribution(int n, Rng& rng);
ValueProfile random_profile(int n, Rng& rng);

}  // namespace onsup
