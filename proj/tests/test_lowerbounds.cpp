#include <doctest.h>

#include <numeric>

#include "onsup/lowerbounds.hpp"

using namespace onsup;

TEST_CASE("value distribution V") {
    ValueDistributionV v(8);
    CHECK(v.support_size() == 3);
    CHECK(v.point(0) == 1.0);
    CHECK(v.point(2) == 0.25);
    CHECK(v.probability(0) == doctest::Approx(1.0 / 7));
    CHECK(v.probability(2) == doctest::Approx(4.0 / 7));
    auto pmf = v.exact_pmf();
    CHECK(std::accumulate(pmf.begin(), pmf.end(), Rat(0)) == Rat(1));
    CHECK(v.mean() == doctest::Approx(3.0 / 7));
    CHECK_THROWS(ValueDistributionV(12));

    ValueDistributionV tiny(2);
    Rng rng(RandomSeed{1, 0});
    for (int t = 0; t < 20; ++t) CHECK(tiny.sample(rng) == 1.0);
}

TEST_CASE("V sampler matches the pmf empirically") {
    ValueDistributionV v(8);
    Rng rng(RandomSeed{4, 0});
    const int trials = 200000;
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) sum += v.sample(rng);
    // mean 3/7, variance < 0.2: 5 sigma band.
    CHECK(std::abs(sum / trials - 3.0 / 7) < 5.0 * std::sqrt(0.2 / trials));
}

TEST_CASE("sample_profile_v is sorted and supported") {
    ValueProfile p = sample_profile_v(16, RandomSeed{9, 0});
    for (int i = 1; i < 16; ++i) CHECK(p.value(i) >= p.value(i + 1));
    for (int i = 1; i <= 16; ++i) CHECK(p.value(i) >= 1.0 / 8);
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(1) == doctest::Approx(1.0));
    CHECK(harmonic(4) == doctest::Approx(25.0 / 12));
}

TEST_CASE("mc_opt_k_bound holds at small sizes") {
    HarmonicBoundResult r = mc_opt_k_bound(8, 1, 20000, RandomSeed{2, 0});
    CHECK(r.lower_bound == doctest::Approx(0.5));
    CHECK(r.holds);
    HarmonicBoundResult k_n = mc_opt_k_bound(8, 8, 20000, RandomSeed{3, 0});
    CHECK(k_n.holds);
    CHECK_THROWS(mc_opt_k_bound(8, 9, 10, RandomSeed{}));
}

TEST_CASE("tradeoff table closed forms") {
    TradeoffTable t = bid_independent_tradeoff(4);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].ratio_single == doctest::Approx(1.0));
    CHECK(t.rows[3].ratio_single == doctest::Approx(25.0 / 48));
    for (size_t i = 1; i < t.rows.size(); ++i) {
        CHECK(t.rows[i].ratio_single <= t.rows[i - 1].ratio_single + 1e-12);
        CHECK(t.rows[i].ratio_all >= t.rows[i - 1].ratio_all - 1e-12);
    }
    CHECK(t.best_g >= 1);
    CHECK(t.best_min_ratio > 0.0);
}

TEST_CASE("knapsack separation exact values") {
    KnapsackSeparation s4 = knapsack_separation(uniform_rational_pmf(4));
    CHECK(s4.expected_opt == Rat(25, 12));
    CHECK(s4.best_committed == Rat(1));
    CHECK(s4.knapsack_guess_welfare == Rat(1));

    KnapsackSeparation s1 = knapsack_separation(uniform_rational_pmf(1));
    CHECK(s1.expected_opt == Rat(1));
    CHECK(s1.best_committed == Rat(1));

    // Same result through the double-based constructor.
    KnapsackSeparation via_d = knapsack_separation(make_uniform(4), 4);
    CHECK(via_d.expected_opt == Rat(25, 12));
}
