#include "onsup/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace onsup {

KnapsackProfile::KnapsackProfile(std::vector<KnapsackBid> bids)
    : bids_(std::move(bids)) {
    if (bids_.empty()) throw std::invalid_argument("knapsack profile must be non-empty");
    for (const auto& b : bids_) {
        if (!(b.value >= 0) || !std::isfinite(b.value))
            throw std::invalid_argument("knapsack bid value must be finite and >= 0");
        if (b.demand < 1)
            throw std::invalid_argument("knapsack bid demand must be >= 1");
        m_ += b.demand;
    }
}

KnapsackProfile KnapsackProfile::parse(const std::string& text) {
    std::vector<KnapsackBid> bids;
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ';', '\n');
    std::stringstream ss(norm);
    std::string line;
    while (std::getline(ss, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("knapsack record: expected c:k, got '" + line + "'");
        bids.push_back(KnapsackBid{std::stod(line.substr(0, colon)),
                                   std::stoi(line.substr(colon + 1))});
    }
    return KnapsackProfile(std::move(bids));
}

std::string KnapsackProfile::to_string() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& b : bids_) os << b.value << ':' << b.demand << '\n';
    return os.str();
}

KnapsackSolution knap_opt(const KnapsackProfile& profile, int capacity) {
    if (capacity < 0) throw std::out_of_range("knap_opt: capacity >= 0 required");
    const int n = profile.size();
    const int cap = std::min(capacity, profile.total_demand());
    // dp[i][c] = best value using bids i+1..n with capacity c.
    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(cap + 1, 0.0));
    for (int i = n - 1; i >= 0; --i) {
        const auto& b = profile.bids()[i];
        for (int c = 0; c <= cap; ++c) {
            double best = dp[i + 1][c];
            if (b.demand <= c) best = std::max(best, b.value + dp[i + 1][c - b.demand]);
            dp[i][c] = best;
        }
    }
    KnapsackSolution sol;
    sol.value = dp[0][cap];
    // Prefer inclusion on ties: yields the lexicographically smallest optimum.
    int c = cap;
    for (int i = 0; i < n; ++i) {
        const auto& b = profile.bids()[i];
        if (b.demand <= c && b.value + dp[i + 1][c - b.demand] == dp[i][c]) {
            sol.chosen.push_back(i + 1);
            c -= b.demand;
        }
    }
    return sol;
}

KnapsackSolution knap_greedy(const KnapsackProfile& profile, int capacity) {
    if (capacity < 0) throw std::out_of_range("knap_greedy: capacity >= 0 required");
    const int n = profile.size();
    std::vector<int> fitting;
    for (int i = 0; i < n; ++i)
        if (profile.bids()[i].demand <= capacity) fitting.push_back(i);

    std::vector<int> by_density = fitting;
    std::stable_sort(by_density.begin(), by_density.end(), [&](int a, int b) {
        const auto &x = profile.bids()[a], &y = profile.bids()[b];
        return x.value * y.demand > y.value * x.demand;
    });

    KnapsackSolution greedy;
    int left = capacity;
    for (int i : by_density) {
        const auto& b = profile.bids()[i];
        if (b.demand > left) break;  // stop at the first non-fitting bid
        greedy.chosen.push_back(i + 1);
        greedy.value += b.value;
        left -= b.demand;
    }
    std::sort(greedy.chosen.begin(), greedy.chosen.end());

    KnapsackSolution single;
    for (int i : fitting) {
        if (profile.bids()[i].value > single.value) {
            single.value = profile.bids()[i].value;
            single.chosen = {i + 1};
        }
    }
    return single.value > greedy.value ? single : greedy;
}

namespace {

KnapsackSolution solve(const KnapsackProfile& bids, int capacity, KnapSolver solver) {
    return solver == KnapSolver::Exact ? knap_opt(bids, capacity)
                                       : knap_greedy(bids, capacity);
}

}  // namespace

int knapsack_guess_supply(const SupplyDistribution& d, const KnapsackProfile& bids,
                          KnapSolver solver) {
    int best_s = 1;
    double best = -1.0;
    for (int s = 1; s <= d.n(); ++s) {
        double surv = d.survival(s);
        if (surv <= 0.0) continue;
        double v = surv * solve(bids, s, solver).value;
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    return best_s;
}

Outcome knapsack_guess(const SupplyDistribution& d, const KnapsackProfile& bids,
                       int ell, KnapSolver solver) {
    if (ell < 0) throw std::out_of_range("knapsack_guess: ell >= 0 required");
    int star = knapsack_guess_supply(d, bids, solver);
    KnapsackSolution chosen = solve(bids, star, solver);

    Outcome out;
    int item = 0;
    for (int idx : chosen.chosen) {
        const auto& b = bids.bid(idx);
        int got = 0;
        while (got < b.demand && item < ell) {
            ++item;
            ++got;
            out.sales.push_back(Sale{item, idx, idx, 0.0});
        }
        if (got == b.demand) out.welfare += b.value;  // partial fills carry zero value
        if (item == ell) break;
    }
    return out;
}

double knap_expected_opt(const KnapsackProfile& bids, const SupplyDistribution& d) {
    double total = 0.0;
    for (int i = 1; i <= d.n(); ++i) {
        double p = d.pmf(i);
        if (p > 0.0) total += p * knap_opt(bids, i).value;
    }
    return total;
}

std::vector<Rat> uniform_rational_pmf(int m) {
    if (m < 1) throw std::invalid_argument("uniform_rational_pmf: m >= 1 required");
    return std::vector<Rat>(m, Rat(1, m));
}

AdversarialKnapsack adversarial_knapsack_instance(const std::vector<Rat>& base_pmf) {
    const int m = static_cast<int>(base_pmf.size());
    if (m < 1) throw std::invalid_argument("adversarial instance: m >= 1 required");
    std::vector<Rat> surv(m);
    Rat tail = 0;
    for (int i = m - 1; i >= 0; --i) {
        tail += base_pmf[i];
        surv[i] = tail;
    }
    if (surv[0] != 1)
        throw std::invalid_argument("adversarial instance: base pmf must sum to 1");

    std::vector<Rat> values(m);
    std::vector<KnapsackBid> bids(m);
    for (int i = 0; i < m; ++i) {
        if (surv[i] == 0)
            throw std::invalid_argument("adversarial instance: base distribution needs full support");
        values[i] = Rat(1) / surv[i];
        bids[i] = KnapsackBid{static_cast<double>(values[i]), m + i + 1};
    }
    std::vector<double> scaled(2 * m, 0.0);
    for (int i = 0; i < m; ++i) scaled[m + i] = static_cast<double>(base_pmf[i]);
    AdversarialKnapsack out{KnapsackProfile(std::move(bids)),
                            SupplyDistribution(std::move(scaled)),
                            std::move(values), base_pmf};
    return out;
}

AdversarialKnapsack adversarial_knapsack_instance(const SupplyDistribution& d_base,
                                                  int m) {
    if (d_base.n() != m)
        throw std::invalid_argument("adversarial instance: base support must be {1..m}");
    std::vector<Rat> pmf(m);
    for (int i = 0; i < m; ++i) pmf[i] = Rat(d_base.probabilities()[i]);
    // Double pmfs rarely sum to exactly 1; absorb the rounding slack into the
    // last support point so the rational construction stays consistent.
    Rat total = 0;
    for (const Rat& p : pmf) total += p;
    pmf[m - 1] += 1 - total;
    return adversarial_knapsack_instance(pmf);
}

}  // namespace onsup
