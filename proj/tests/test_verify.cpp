#include <doctest.h>

#include <stdexcept>

#include "onsup/verify.hpp"

using namespace onsup;

namespace {

std::vector<RandomSeed> seeds(int count, std::uint64_t master = 1) {
    std::vector<RandomSeed> out;
    for (int t = 0; t < count; ++t)
        out.push_back(RandomSeed{master, 0}.derive(t));
    return out;
}

std::vector<double> random_raw(int n, std::uint64_t seed) {
    Rng rng(RandomSeed{seed, 99});
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform();
    return v;
}

}  // namespace

TEST_CASE("trivial is truthful") {
    auto r = make_runner(MechanismSpec::trivial());
    CHECK(check_truthful(r, {5, 3}, seeds(3)).empty());
}

TEST_CASE("hazard_guess is truthful on random profiles") {
    auto r = make_runner(MechanismSpec::hazard_guess(make_uniform(10)));
    for (std::uint64_t s = 0; s < 5; ++s)
        CHECK(check_truthful(r, random_raw(10, s), seeds(5)).empty());
}

TEST_CASE("random_guess is truthful on random profiles") {
    auto r = make_runner(MechanismSpec::random_guess());
    for (std::uint64_t s = 0; s < 5; ++s)
        CHECK(check_truthful(r, random_raw(8, s), seeds(5)).empty());
}

TEST_CASE("first-price control yields a reproducible witness") {
    auto r = first_price_control(2);
    std::vector<double> raw = random_raw(6, 1);
    ViolationReport rep = check_truthful(r, raw, seeds(3));
    REQUIRE_FALSE(rep.empty());
    REQUIRE(rep.truthfulness.has_value());
    const TruthfulnessWitness& w = *rep.truthfulness;
    CHECK(w.utility_deviating > w.utility_truthful + 1e-9);

    // Re-execute the witness: it must certify the same gain.
    std::vector<double> dev = raw;
    dev[w.bidder - 1] = w.deviating_bid;
    Outcome truthful = r(raw, w.ell, w.seed);
    Outcome deviated = r(dev, w.ell, w.seed);
    CHECK(utility(w.true_value, truthful, w.bidder) ==
          doctest::Approx(w.utility_truthful));
    CHECK(utility(w.true_value, deviated, w.bidder) ==
          doctest::Approx(w.utility_deviating));
}

TEST_CASE("envy-freeness holds for shipped mechanisms") {
    for (auto spec : {MechanismSpec::random_guess(),
                      MechanismSpec::hazard_guess(make_uniform(8)),
                      MechanismSpec::trivial()}) {
        auto r = make_runner(spec);
        CHECK(check_online_envy_free(r, random_raw(8, 4), seeds(5)).empty());
    }
}

TEST_CASE("discriminatory control fails price uniformity") {
    ViolationReport rep =
        check_online_envy_free(discriminatory_control(4), random_raw(8, 4), seeds(2));
    REQUIRE_FALSE(rep.empty());
    CHECK(rep.kind == "price-uniformity");
    CHECK_FALSE(rep.describe().empty());
}

TEST_CASE("adversarial ratio examples") {
    RatioReport tr = adversarial_ratio(MechanismSpec::trivial(),
                                       ValueProfile({1, 1, 1, 1}));
    CHECK(tr.ratio == doctest::Approx(4.0));

    RatioReport rg = adversarial_ratio(MechanismSpec::random_guess(),
                                       ValueProfile({1, 1, 1, 1}));
    CHECK(rg.ratio <= 2.0 + 1e-9);
    CHECK(rg.mode == "adversarial");

    CHECK_THROWS_AS(adversarial_ratio(MechanismSpec::trivial(),
                                      ValueProfile({0, 0})),
                    std::domain_error);
}

TEST_CASE("stochastic ratio example") {
    RatioReport r = stochastic_ratio(MechanismSpec::hazard_guess(make_uniform(8)),
                                     ValueProfile(std::vector<double>(8, 1.0)),
                                     make_uniform(8));
    CHECK(r.ratio == doctest::Approx(1.2));
    CHECK(r.mode == "stochastic");
}

TEST_CASE("stochastic ratio monte carlo agrees") {
    MechanismSpec hg = MechanismSpec::hazard_guess(make_uniform(8));
    ValueProfile ones(std::vector<double>(8, 1.0));
    RatioReport mc = stochastic_ratio_mc(hg, ones, make_uniform(8), 20000,
                                         RandomSeed{5, 0});
    CHECK(std::abs(mc.ratio - 1.2) <= 4.0 * mc.std_error + 1e-12);
}

TEST_CASE("lemma 3s+1 examples") {
    LemmaCheck a = check_lemma_3s1(1, std::vector<double>(9, 1.0));
    CHECK(a.lhs == doctest::Approx(2.0));
    CHECK(a.holds);
    LemmaCheck b = check_lemma_3s1(1, {});
    CHECK(b.lhs == 0.0);
    CHECK(b.holds);
    CHECK_THROWS_AS(check_lemma_3s1(4, std::vector<double>{0.1}),
                    std::domain_error);

    Rng rng(RandomSeed{13, 0});
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> h(rng.below(40));
        for (double& x : h) x = rng.uniform(0.25, 1.0);
        CHECK(check_lemma_3s1(4, h).holds);
    }
}

TEST_CASE("bound5 examples") {
    Bound5Check a = check_bound5(make_uniform(4), ValueProfile({1, 1, 1, 1}));
    CHECK(a.direct_ratio == doctest::Approx(5.0 / 3));
    CHECK(a.holds);
    Bound5Check b = check_bound5(make_point(3, 5), ValueProfile({2, 1, 1, 1, 1}));
    CHECK(b.direct_ratio == doctest::Approx(1.0));
    CHECK_THROWS_AS(check_bound5(make_decreasing_hr(6), ValueProfile({1, 1, 1, 1, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("envy constraints at n=16") {
    EnvyConstraints e = envy_free_constraints(16, 3, Rat(2));
    CHECK(e.c1_holds);  // 48 >= -1
    EnvyConstraints loose = envy_free_constraints(16, 0, Rat(1000000));
    CHECK(loose.c1_holds);
    CHECK(loose.c2_holds);
    CHECK_THROWS(envy_free_constraints(12, 1, Rat(2)));
    CHECK_THROWS(envy_free_constraints(16, 4, Rat(2)));
}
