#include "onsup/lowerbounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace onsup {

namespace {

bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

ValueDistributionV::ValueDistributionV(int n) : n_(n) {
    if (!power_of_two(n) || n < 2)
        throw std::invalid_argument("ValueDistributionV: n must be a power of two >= 2");
    log2n_ = std::countr_zero(static_cast<unsigned>(n));
}

double ValueDistributionV::point(int i) const {
    if (i < 0 || i >= log2n_) throw std::out_of_range("V: support index");
    return std::ldexp(1.0, -i);
}

double ValueDistributionV::probability(int i) const {
    if (i < 0 || i >= log2n_) throw std::out_of_range("V: support index");
    return std::ldexp(1.0, i) / (n_ - 1);
}

std::vector<Rat> ValueDistributionV::exact_pmf() const {
    std::vector<Rat> pmf(log2n_);
    for (int i = 0; i < log2n_; ++i) pmf[i] = Rat(1LL << i, n_ - 1);
    return pmf;
}

double ValueDistributionV::mean() const {
    // sum_i (1/2^i)(2^i/(n-1)) = log2(n)/(n-1)
    return static_cast<double>(log2n_) / (n_ - 1);
}

double ValueDistributionV::sample(Rng& rng) const {
    // u uniform over {0..n-2}; value index i covers u+1 in [2^i, 2^(i+1)).
    std::uint64_t u = rng.below(static_cast<std::uint64_t>(n_ - 1));
    int i = std::bit_width(u + 1) - 1;
    return std::ldexp(1.0, -i);
}

ValueProfile sample_profile_v(int n, RandomSeed seed) {
    ValueDistributionV v(n);
    Rng rng(seed);
    std::vector<double> vals(n);
    for (double& x : vals) x = v.sample(rng);
    return ValueProfile(std::move(vals));
}

double harmonic(int k) {
    double h = 0.0;
    for (int i = 1; i <= k; ++i) h += 1.0 / i;
    return h;
}

HarmonicBoundResult mc_opt_k_bound(int n, int k, int trials, RandomSeed seed) {
    if (k < 1 || k > n) throw std::out_of_range("mc_opt_k_bound: k out of [1, n]");
    if (trials < 1) throw std::invalid_argument("mc_opt_k_bound: trials >= 1 required");
    ValueDistributionV v(n);
    Rng rng(seed);
    const int levels = v.support_size();
    std::vector<int> counts(levels);
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int j = 0; j < n; ++j) {
            std::uint64_t u = rng.below(static_cast<std::uint64_t>(n - 1));
            ++counts[std::bit_width(u + 1) - 1];
        }
        double opt = 0.0;
        int left = k;
        for (int i = 0; i < levels && left > 0; ++i) {
            int take = std::min(left, counts[i]);
            opt += take * std::ldexp(1.0, -i);
            left -= take;
        }
        sum += opt;
        sumsq += opt * opt;
    }
    HarmonicBoundResult out;
    out.estimate = sum / trials;
    double var = std::max(0.0, sumsq / trials - out.estimate * out.estimate);
    out.std_error = std::sqrt(var / trials);
    out.lower_bound = harmonic(k + 1) - 1.0;
    out.margin = out.estimate - out.lower_bound;
    out.holds = out.estimate >= out.lower_bound - 3.0 * out.std_error;
    return out;
}

TradeoffTable bid_independent_tradeoff(int n) {
    if (n < 2) throw std::invalid_argument("bid_independent_tradeoff: n >= 2 required");
    SupplyDistribution d = make_decreasing_hr(n);
    TradeoffTable table;
    double all_opt = d.mean();  // E[min(l, n)] = E[l], support is {1..n}
    for (int g = 1; g <= n; ++g) {
        TradeoffRow row;
        row.g = g;
        // Lone high bidder sits at a uniformly random position p among the
        // top g; it is served iff at least p items arrive.
        double single = 0.0;
        for (int p = 1; p <= g; ++p) single += d.survival(p);
        row.ratio_single = single / g;
        // All-ones: welfare min(l, g).
        double all = 0.0;
        for (int j = 1; j < g; ++j) all += j * d.pmf(j);
        all += g * d.survival(g);
        row.ratio_all = all / all_opt;
        table.rows.push_back(row);
        double worst = std::min(row.ratio_single, row.ratio_all);
        if (worst > table.best_min_ratio) {
            table.best_min_ratio = worst;
            table.best_g = g;
        }
    }
    return table;
}

KnapsackSeparation knapsack_separation(const std::vector<Rat>& base_pmf) {
    const int m = static_cast<int>(base_pmf.size());
    if (m < 1) throw std::invalid_argument("knapsack_separation: m >= 1 required");
    std::vector<Rat> surv(m);
    Rat tail = 0;
    for (int i = m - 1; i >= 0; --i) {
        tail += base_pmf[i];
        surv[i] = tail;
    }
    if (surv[0] != 1)
        throw std::invalid_argument("knapsack_separation: base pmf must sum to 1");

    KnapsackSeparation out;
    out.expected_opt = 0;
    out.best_committed = 0;
    for (int i = 0; i < m; ++i) {
        if (surv[i] == 0)
            throw std::invalid_argument("knapsack_separation: base distribution needs full support");
        out.expected_opt += base_pmf[i] / surv[i];  // sum of hazards
        Rat committed = (Rat(1) / surv[i]) * surv[i];
        out.best_committed = std::max(out.best_committed, committed);
    }
    // KnapsackGuess over the scaled instance: capacity m+j fits exactly
    // bidder j, so the score is c_j * survival(j); commit to the smallest
    // argmax and collect its value whenever its demand is met.
    Rat best_score = -1;
    int star = 1;
    for (int j = 1; j <= m; ++j) {
        Rat score = (Rat(1) / surv[j - 1]) * surv[j - 1];
        if (score > best_score) {
            best_score = score;
            star = j;
        }
    }
    out.knapsack_guess_welfare = (Rat(1) / surv[star - 1]) * surv[star - 1];
    return out;
}

KnapsackSeparation knapsack_separation(const SupplyDistribution& d_base, int m) {
    AdversarialKnapsack inst = adversarial_knapsack_instance(d_base, m);
    return knapsack_separation(inst.pmf);
}

}  // namespace onsup
