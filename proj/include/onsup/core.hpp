#pragma once

#include <string>
#include <vector>

namespace onsup {

// Unit-demand bids v_1 >= ... >= v_n. Bidder ids 1..n refer to the position
// in the original (unsorted) input, so a bidder keeps its identity when the
// profile is rebuilt with a deviating bid.
class ValueProfile {
  public:
    explicit ValueProfile(std::vector<double> raw);

    int n() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    // 1-based rank; value(1) is the highest bid.
    double value(int rank) const { return values_.at(rank - 1); }
    // Original input position (1-based) of the bidder at sorted position
    // `sorted_pos` (1-based).
    int original_id(int sorted_pos) const { return orig_.at(sorted_pos - 1); }
    // Sorted position (1-based) of original bidder `id` (1-based).
    int rank_of(int id) const { return rank_of_.at(id - 1); }
    double total() const { return prefix_.back(); }

    // Sum of the k largest values (OPT_k). Throws std::out_of_range unless
    // 0 <= k <= n.
    double opt(int k) const;

    static ValueProfile parse(const std::string& text);
    std::string to_string() const;

  private:
    std::vector<double> values_;
    std::vector<int> orig_;
    std::vector<int> rank_of_;
    std::vector<double> prefix_;  // prefix_[k] = opt(k)
};

// Finite supply distribution over {1..N} with survival and hazard views.
class SupplyDistribution {
  public:
    explicit SupplyDistribution(std::vector<double> pmf, double tol = 1e-9,
                                std::string record = "");

    int n() const { return static_cast<int>(pmf_.size()); }
    const std::vector<double>& probabilities() const { return pmf_; }
    double pmf(int i) const;       // Pr[l = i], 1-based
    double survival(int i) const;  // Pr[l >= i]; survival(n()+1) == 0
    double hazard(int i) const;    // Pr[l = i] / Pr[l >= i]
    double mean() const;           // E[l]

    // Text record this distribution round-trips through; "pmf=..." unless a
    // named constructor supplied its own.
    const std::string& record() const { return record_; }

  private:
    std::vector<double> pmf_;
    std::vector<double> survival_;  // survival_[i-1] = Pr[l >= i]
    std::string record_;
};

double opt_k(const ValueProfile& profile, int k);

// E_l[OPT_l]. Profile and support lengths may differ: missing bids count as
// zero, missing supply mass as zero probability.
double expected_opt(const ValueProfile& profile, const SupplyDistribution& d);

double hazard(const SupplyDistribution& d, int i);
double survival(const SupplyDistribution& d, int i);

// True iff h(i+1) >= h(i) - tol on every consecutive pair with positive
// survival.
bool is_mhr(const SupplyDistribution& d, double tol = 1e-12);

// Smallest s with s >= survival(s)/pmf(s); support points with pmf 0 fail the
// condition; n() if no s qualifies.
int s_star(const SupplyDistribution& d);

// Bound(s) = sum_{i<=s} h(i) + (sum_{i>s} i*pmf(i)) / ((s+1)*survival(s+1)).
double bound_s(const SupplyDistribution& d, int s);

struct FixedSupplyChoice {
    int g = 0;
    double value = 0.0;
};

// argmax_i opt(i)*survival(i), ties toward smallest i.
FixedSupplyChoice best_fixed_supply(const ValueProfile& profile,
                                    const SupplyDistribution& d);

SupplyDistribution make_uniform(int n);
SupplyDistribution make_point(int k, int n);
// Binomial(trials, p) conditioned on >= 1, padded with zero mass up to n.
SupplyDistribution make_binomial(int trials, double p, int n);
// pmf proportional to q^(i-1) on {1..n}; hazard (1-q)/(1-q^(n-i+1)) is
// non-decreasing.
SupplyDistribution make_truncated_geometric(double q, int n);
// pmf 1/(i+i^2) for i < n and 1/n at i = n, so survival(i) = 1/i exactly.
SupplyDistribution make_decreasing_hr(int n);

// Accepts "kind=<name>; n=<int>; params=<k=v,...>" or "pmf=<p1,p2,...>".
SupplyDistribution parse_distribution(const std::string& record);

}  // namespace onsup
