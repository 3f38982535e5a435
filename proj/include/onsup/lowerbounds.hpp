#pragma once

#include <vector>

#include "onsup/core.hpp"
#include "onsup/knapsack.hpp"
#include "onsup/rational.hpp"
#include "onsup/rng.hpp"

namespace onsup {

// Adversarial value distribution: support {1/2^i : i = 0..log2(n)-1} with
// Pr[v = 1/2^i] = 2^i/(n-1). n must be a power of two >= 2.
class ValueDistributionV {
  public:
    explicit ValueDistributionV(int n);

    int n() const { return n_; }
    int support_size() const { return log2n_; }
    double point(int i) const;        // 1/2^i
    double probability(int i) const;  // 2^i/(n-1)
    std::vector<Rat> exact_pmf() const;
    double mean() const;

    double sample(Rng& rng) const;

  private:
    int n_;
    int log2n_;
};

ValueProfile sample_profile_v(int n, RandomSeed seed);

struct HarmonicBoundResult {
    double estimate = 0.0;
    double std_error = 0.0;
    double lower_bound = 0.0;  // H_{k+1} - 1
    double margin = 0.0;       // estimate - lower_bound
    bool holds = false;        // estimate >= lower_bound - 3 * std_error
};

// Monte Carlo estimate of E[OPT_k] under V against the harmonic lower bound.
HarmonicBoundResult mc_opt_k_bound(int n, int k, int trials, RandomSeed seed);

double harmonic(int k);

struct TradeoffRow {
    int g = 0;
    double ratio_single = 0.0;  // welfare fraction on (1,0,...,0), random order
    double ratio_all = 0.0;     // welfare fraction on (1,...,1)
};

struct TradeoffTable {
    std::vector<TradeoffRow> rows;
    int best_g = 0;
    double best_min_ratio = 0.0;  // max over g of min(ratio_single, ratio_all)
};

// Closed-form Single/All-bidder welfare fractions for every bid-independent
// supply cap g under the decreasing-hazard distribution.
TradeoffTable bid_independent_tradeoff(int n);

struct KnapsackSeparation {
    Rat expected_opt;           // = sum of base hazards
    Rat best_committed;         // best single-bidder commitment, = 1
    Rat knapsack_guess_welfare; // = 1
};

KnapsackSeparation knapsack_separation(const std::vector<Rat>& base_pmf);
KnapsackSeparation knapsack_separation(const SupplyDistribution& d_base, int m);

}  // namespace onsup
