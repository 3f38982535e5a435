#pragma once

#include <string>
#include <vector>

#include "onsup/core.hpp"
#include "onsup/mechanisms.hpp"
#include "onsup/rational.hpp"

namespace onsup {

// Step valuation: worth c once k items are received, zero otherwise.
struct KnapsackBid {
    double value = 0.0;
    int demand = 1;

    double valuation(int quantity) const {
        return quantity >= demand ? value : 0.0;
    }
};

class KnapsackProfile {
  public:
    explicit KnapsackProfile(std::vector<KnapsackBid> bids);

    int size() const { return static_cast<int>(bids_.size()); }
    const std::vector<KnapsackBid>& bids() const { return bids_; }
    const KnapsackBid& bid(int i) const { return bids_.at(i - 1); }  // 1-based
    int total_demand() const { return m_; }

    // One "c:k" record per line (or ';'-separated).
    static KnapsackProfile parse(const std::string& text);
    std::string to_string() const;

  private:
    std::vector<KnapsackBid> bids_;
    int m_ = 0;
};

struct KnapsackSolution {
    double value = 0.0;
    std::vector<int> chosen;  // 1-based bid indices, ascending
};

// Exact 0/1 knapsack by DP over capacities; the chosen set is the
// lexicographically smallest among optima.
KnapsackSolution knap_opt(const KnapsackProfile& bids, int capacity);

// Better of greedy-by-density (stop at the first non-fitting bid) and the
// single best fitting bid; a 2-approximation of knap_opt.
KnapsackSolution knap_greedy(const KnapsackProfile& bids, int capacity);

enum class KnapSolver { Exact, Greedy };

// Picks s* = argmax_s survival(s) * OPT_s (ties toward smallest s), commits
// to the solution at s*, and assigns arriving items to its bidders in
// chosen-set order. A bidder's value counts only once his full demand is met
// by item ell.
Outcome knapsack_guess(const SupplyDistribution& d, const KnapsackProfile& bids,
                       int ell, KnapSolver solver = KnapSolver::Exact);

// Supply cap chosen by knapsack_guess, for reporting.
int knapsack_guess_supply(const SupplyDistribution& d, const KnapsackProfile& bids,
                          KnapSolver solver = KnapSolver::Exact);

double knap_expected_opt(const KnapsackProfile& bids, const SupplyDistribution& d);

// Worst-case instance for committed supply: m bidders with demands m+1..2m
// and values 1/survival(d_base, i), supplied from d_base shifted to
// {m+1..2m}. At most one bidder fits any capacity.
struct AdversarialKnapsack {
    KnapsackProfile bids;
    SupplyDistribution d_scaled;
    std::vector<Rat> values;  // exact c_i
    std::vector<Rat> pmf;     // exact base pmf
};
AdversarialKnapsack adversarial_knapsack_instance(
    const SupplyDistribution& d_base, int m);
AdversarialKnapsack adversarial_knapsack_instance(const std::vector<Rat>& base_pmf);

std::vector<Rat> uniform_rational_pmf(int m);

}  // namespace onsup
