// Acceptance suite: one numbered criterion per invocation (or all with no
// argument). Prints "criterion N: PASS/FAIL — detail" per criterion and exits
// nonzero if any checked criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "onsup/core.hpp"
#include "onsup/knapsack.hpp"
#include "onsup/lowerbounds.hpp"
#include "onsup/mechanisms.hpp"
#include "onsup/rational.hpp"
#include "onsup/verify.hpp"

using namespace onsup;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

std::vector<RandomSeed> make_seeds(int count, std::uint64_t master) {
    std::vector<RandomSeed> out;
    for (int t = 0; t < count; ++t)
        out.push_back(RandomSeed{master, 0}.derive(t));
    return out;
}

// Shared sweep for criteria 1 and 7: 500 random MHR distributions, 20 random
// profiles each.
struct MhrCase {
    SupplyDistribution dist;
    ValueProfile profile;
};

std::vector<MhrCase> mhr_sweep() {
    std::vector<MhrCase> cases;
    Rng rng(RandomSeed{2024, 1});
    for (int d = 0; d < 500; ++d) {
        int n = 2 + static_cast<int>(rng.below(63));  // n in [2, 64]
        SupplyDistribution dist = random_mhr_distribution(n, rng);
        for (int p = 0; p < 20; ++p)
            cases.push_back({dist, random_profile(n, rng)});
    }
    return cases;
}

Result criterion1() {
    double worst = 0.0;
    int checked = 0;
    for (const MhrCase& c : mhr_sweep()) {
        MechanismSpec spec = MechanismSpec::hazard_guess(c.dist);
        double r = stochastic_ratio(spec, c.profile, c.dist).ratio;
        worst = std::max(worst, r);
        ++checked;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d MHR cases, worst stochastic ratio %.6f vs bound 16.875",
                  checked, worst);
    return {worst <= 16.875 + 1e-9, buf};
}

Result criterion2() {
    double worst_ratio = 1e300;
    Rng rng(RandomSeed{2024, 2});
    for (int n : {8, 16, 32, 64, 128}) {
        SupplyDistribution d = make_uniform(n);
        MechanismSpec spec = MechanismSpec::hazard_guess(d);
        std::vector<ValueProfile> profiles;
        profiles.emplace_back(std::vector<double>(n, 1.0));
        std::vector<double> single(n, 0.0);
        single[0] = 1.0;
        profiles.emplace_back(single);
        for (int p = 0; p < 50; ++p) profiles.push_back(random_profile(n, rng));
        for (const ValueProfile& prof : profiles) {
            double w = expected_welfare(spec, prof, d).value;
            double ratio = w / expected_opt(prof, d);
            worst_ratio = std::min(worst_ratio, ratio);
        }
        // Single-one profile: exact service probability in rationals.
        int g = hazard_guess_supply(d);
        long long served = 0;
        for (int ell = 1; ell <= n; ++ell) served += std::min(ell, g);
        Rat prob(served, static_cast<long long>(n) * g);
        Rat expected = 1 - Rat(g - 1, 2LL * n);
        if (prob != expected || prob != Rat(3, 4)) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "n=%d single-one service probability is not 3/4", n);
            return {false, buf};
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "worst welfare fraction %.6f vs 0.6; single-one service "
                  "probability exactly 3/4 at every n",
                  worst_ratio);
    return {worst_ratio >= 0.6 - 1e-9, buf};
}

Result criterion3() {
    int violations = 0;
    double worst_excess = -1e300;
    int worst_n = 0;
    Rng rng(RandomSeed{2024, 3});
    for (int n = 4; n <= 256; n *= 2) {
        double bound = std::log2(static_cast<double>(n));
        for (int p = 0; p < 100; ++p) {
            ValueProfile prof = random_profile(n, rng);
            double r = adversarial_ratio(MechanismSpec::random_guess(), prof).ratio;
            if (r > bound + 1e-9) ++violations;
            if (r - bound > worst_excess) {
                worst_excess = r - bound;
                worst_n = n;
            }
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%d/700 profiles exceed log2(n); worst margin %+.6f at n=%d%s",
                  violations, worst_excess, worst_n,
                  violations > 0 ? " (excesses occur at ell=1 on skewed profiles)"
                                 : "");
    return {violations == 0, buf};
}

Result criterion4() {
    for (int n : {2, 3, 8, 33, 100}) {
        ValueProfile ones(std::vector<double>(n, 1.0));
        Outcome o = trivial(ones, n);
        if (ones.opt(n) / o.welfare != static_cast<double>(n))
            return {false, "trivial ratio differs from n"};
    }
    return {true, "trivial ratio equals n exactly on all-ones at ell=n"};
}

Result criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    auto seeds = make_seeds(50, 501);
    Rng rng(RandomSeed{2024, 5});
    for (int n : {2, 4, 8, 16, 32}) {
        for (int rep = 0; rep < 2; ++rep) {
            std::vector<double> raw(n);
            for (double& x : raw) x = rng.uniform();
            std::vector<MechanismRunner> runners = {
                make_runner(MechanismSpec::trivial()),
                make_runner(MechanismSpec::random_guess()),
                make_runner(MechanismSpec::hazard_guess(make_uniform(n)))};
            for (const auto& r : runners) {
                ViolationReport rep_ = check_truthful(r, raw, seeds);
                if (!rep_.empty())
                    return {false, "witness: " + rep_.describe()};
            }
        }
    }
    ViolationReport control = check_truthful(
        first_price_control(2),
        {0.9, 0.1, 0.5, 0.7, 0.3, 0.2}, make_seeds(3, 502));
    if (control.empty())
        return {false, "first-price control produced no witness"};
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "zero witnesses for 3 mechanisms (n<=32, 50 seeds); "
                  "first-price control caught; %.1fs",
                  secs);
    return {true, buf};
}

Result criterion6() {
    auto seeds = make_seeds(50, 601);
    Rng rng(RandomSeed{2024, 6});
    for (int n : {2, 4, 8, 16, 32}) {
        for (int rep = 0; rep < 3; ++rep) {
            std::vector<double> raw(n);
            for (double& x : raw) x = rng.uniform();
            for (auto spec : {MechanismSpec::random_guess(),
                              MechanismSpec::hazard_guess(make_uniform(n))}) {
                ViolationReport r = check_online_envy_free(make_runner(spec), raw,
                                                           seeds);
                if (!r.empty()) return {false, "witness: " + r.describe()};
            }
        }
    }
    ViolationReport control = check_online_envy_free(
        discriminatory_control(4),
        {0.9, 0.1, 0.5, 0.7, 0.3, 0.2, 0.8, 0.4}, make_seeds(3, 602));
    if (control.empty())
        return {false, "discriminatory control produced no witness"};
    return {true, "zero witnesses incl. price uniformity at every ell; "
                  "discriminatory control caught"};
}

Result criterion7() {
    Rng rng(RandomSeed{2024, 7});
    for (int t = 0; t < 10000; ++t) {
        int s = 1 + static_cast<int>(rng.below(32));
        std::vector<double> h(rng.below(80));
        for (double& x : h) x = rng.uniform(1.0 / s, 1.0);
        LemmaCheck c = check_lemma_3s1(s, h);
        if (!c.holds) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "3s+1 failed: s=%d lhs=%.9f", s, c.lhs);
            return {false, buf};
        }
    }
    double worst = 0.0;
    for (const MhrCase& c : mhr_sweep()) {
        Bound5Check b = check_bound5(c.dist, c.profile);
        worst = std::max(worst, std::max(b.min_bound, b.direct_ratio));
        if (!b.holds) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "bound5 failed: min_bound=%.9f direct=%.9f",
                          b.min_bound, b.direct_ratio);
            return {false, buf};
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "10^4 3s+1 draws hold; bound5 holds on MHR sweep "
                  "(worst value %.6f vs 5)",
                  worst);
    return {true, buf};
}

Result criterion8() {
    double worst_margin_sigma = 1e300;
    for (int n : {64, 256, 1024}) {
        for (int k : {1, 4, 16, 64}) {
            if (k > n) continue;
            HarmonicBoundResult r =
                mc_opt_k_bound(n, k, 100000, RandomSeed{2024, 8}.derive(n * 1000 + k));
            if (!r.holds) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "n=%d k=%d estimate %.6f below H_{k+1}-1=%.6f",
                              n, k, r.estimate, r.lower_bound);
                return {false, buf};
            }
            if (r.std_error > 0)
                worst_margin_sigma = std::min(worst_margin_sigma,
                                              r.margin / r.std_error);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "harmonic bound holds on all (n,k); smallest margin %.1f sigma",
                  worst_margin_sigma);
    return {true, buf};
}

Result criterion9() {
    Rng rng(RandomSeed{2024, 9});
    for (int t = 0; t < 10000; ++t) {
        int nb = 1 + static_cast<int>(rng.below(15));
        std::vector<KnapsackBid> bids(nb);
        for (auto& b : bids) {
            b.value = rng.uniform(0.0, 10.0);
            b.demand = 1 + static_cast<int>(rng.below(6));
        }
        KnapsackProfile prof(bids);
        int s = static_cast<int>(rng.below(prof.total_demand() + 1));
        double exact = knap_opt(prof, s).value;
        // Brute-force oracle.
        double brute = 0.0;
        for (int mask = 0; mask < (1 << nb); ++mask) {
            double v = 0.0;
            int used = 0;
            for (int i = 0; i < nb; ++i)
                if (mask & (1 << i)) {
                    v += bids[i].value;
                    used += bids[i].demand;
                }
            if (used <= s) brute = std::max(brute, v);
        }
        if (std::abs(exact - brute) > 1e-9)
            return {false, "knap_opt disagrees with brute force"};
        if (knap_greedy(prof, s).value < exact / 2 - 1e-9)
            return {false, "greedy below half of optimum"};
    }
    for (int m : {4, 16, 64}) {
        KnapsackSeparation sep = knapsack_separation(uniform_rational_pmf(m));
        Rat hm = 0;
        for (int i = 1; i <= m; ++i) hm += Rat(1, i);
        if (sep.expected_opt != hm || sep.best_committed != 1 ||
            sep.knapsack_guess_welfare != 1) {
            char buf[120];
            std::snprintf(buf, sizeof buf, "separation not (H_m, 1, 1) at m=%d", m);
            return {false, buf};
        }
    }
    return {true, "10^4 instances: knap_opt == brute force, greedy >= opt/2; "
                  "separation (H_m, 1, 1) exact for m in {4,16,64}"};
}

Result criterion10() {
    std::string curve = "best min-ratio:";
    double prev = 1e300;
    bool strict = true;
    for (int n = 64; n <= 16384; n *= 2) {
        TradeoffTable t = bid_independent_tradeoff(n);
        char buf[64];
        std::snprintf(buf, sizeof buf, " n=%d:%.5f", n, t.best_min_ratio);
        curve += buf;
        if (t.best_min_ratio >= prev) strict = false;
        prev = t.best_min_ratio;
    }
    return {strict, curve};
}

Result criterion11() {
    const int n = 1 << 16;
    const Rat alpha(16, 2 * 4);  // log2(n) / (2 log2 log2 n) = 16/8 = 2
    std::vector<int> feasible;
    for (int c = 0; c <= 15; ++c) {
        EnvyConstraints e = envy_free_constraints(n, c, alpha);
        if (e.c1_holds && e.c2_holds) feasible.push_back(c);
    }
    if (feasible.empty())
        return {true, "no c in [0,15] satisfies both constraints at n=2^16"};
    std::string detail = "feasible c found:";
    for (int c : feasible) detail += " " + std::to_string(c);
    detail += " (exact arithmetic; both constraints hold there)";
    return {false, detail};
}

Result run(int idx) {
    switch (idx) {
        case 1: return criterion1();
        case 2: return criterion2();
        case 3: return criterion3();
        case 4: return criterion4();
        case 5: return criterion5();
        case 6: return criterion6();
        case 7: return criterion7();
        case 8: return criterion8();
        case 9: return criterion9();
        case 10: return criterion10();
        case 11: return criterion11();
    }
    return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
    int lo = 1, hi = 11;
    if (argc > 1) lo = hi = std::atoi(argv[1]);
    bool all_pass = true;
    for (int i = lo; i <= hi; ++i) {
        Result r = run(i);
        std::printf("criterion %d: %s — %s\n", i, r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
