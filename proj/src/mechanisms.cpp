#include "onsup/mechanisms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace onsup {

MechanismSpec MechanismSpec::trivial() { return MechanismSpec{}; }

MechanismSpec MechanismSpec::random_guess() {
    MechanismSpec s;
    s.kind = MechanismKind::RandomGuess;
    s.perm = PermPolicy::SeededRandom;
    return s;
}

MechanismSpec MechanismSpec::hazard_guess(SupplyDistribution d, PermPolicy perm) {
    MechanismSpec s;
    s.kind = MechanismKind::HazardGuess;
    s.perm = perm;
    s.dist = std::move(d);
    return s;
}

MechanismSpec MechanismSpec::bid_independent(int g, PermPolicy perm) {
    if (g < 1) throw std::invalid_argument("bid_independent: g >= 1 required");
    MechanismSpec s;
    s.kind = MechanismKind::BidIndependent;
    s.perm = perm;
    s.g = g;
    return s;
}

MechanismSpec MechanismSpec::parse(const std::string& text,
                                   const std::optional<SupplyDistribution>& dist,
                                   PermPolicy perm) {
    if (text == "trivial") return trivial();
    if (text == "randomguess") return random_guess();
    if (text.rfind("fixed:", 0) == 0)
        return bid_independent(std::stoi(text.substr(6)), perm);
    if (text == "hazardguess" || text.rfind("hazardguess:", 0) == 0) {
        std::optional<SupplyDistribution> d = dist;
        if (text.size() > 12) d = parse_distribution(text.substr(12));
        if (!d) throw std::invalid_argument("hazardguess needs a distribution");
        return hazard_guess(*d, perm);
    }
    throw std::invalid_argument("unknown mechanism '" + text + "'");
}

std::string MechanismSpec::name() const {
    switch (kind) {
        case MechanismKind::Trivial: return "trivial";
        case MechanismKind::RandomGuess: return "randomguess";
        case MechanismKind::HazardGuess: return "hazardguess";
        case MechanismKind::BidIndependent: return "fixed:" + std::to_string(g);
    }
    return "?";
}

bool Outcome::won(int original_id) const { return sale_position(original_id) != 0; }

int Outcome::sale_position(int original_id) const {
    for (const Sale& s : sales)
        if (s.original == original_id) return s.item;
    return 0;
}

double Outcome::price_paid(int original_id) const {
    for (const Sale& s : sales)
        if (s.original == original_id) return s.price;
    return 0.0;
}

Outcome engine_fixed_supply(const ValueProfile& profile, int g,
                            const std::vector<int>& perm, int ell) {
    const int n = profile.n();
    if (g < 1 || g > n) throw std::out_of_range("engine: g out of [1, n]");
    if (ell < 0 || ell > n) throw std::out_of_range("engine: ell out of [0, n]");
    if (static_cast<int>(perm.size()) != g)
        throw std::invalid_argument("engine: perm must have g entries");

    const double price = g < n ? profile.value(g + 1) : 0.0;
    // serve[t] = sorted rank (1-based) of the bidder served t-th.
    Outcome out;
    const int sold = std::min(ell, g);
    out.sales.reserve(sold);
    for (int t = 0; t < sold; ++t) {
        int rank = perm[t] + 1;
        out.sales.push_back(Sale{t + 1, rank, profile.original_id(rank), price});
        out.welfare += profile.value(rank);
    }
    return out;
}

namespace {

std::vector<int> identity_perm(int g) {
    std::vector<int> p(g);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Service order for the top-g slots, induced by a random priority drawn over
// bidder identities (not slots). The draw ignores the bids, so a bidder that
// changes its own bid but stays in the top g keeps its service position —
// which is what makes the randomized mechanisms truthful for every fixed
// seed.
std::vector<int> priority_perm(const ValueProfile& profile, int g, Rng& rng) {
    std::vector<int> prio = rng.permutation(profile.n());
    std::vector<int> slots = identity_perm(g);
    std::sort(slots.begin(), slots.end(), [&](int a, int b) {
        return prio[profile.original_id(a + 1) - 1] <
               prio[profile.original_id(b + 1) - 1];
    });
    return slots;
}

}  // namespace

Outcome trivial(const ValueProfile& profile, int ell) {
    if (ell < 0) throw std::out_of_range("trivial: ell >= 0 required");
    return engine_fixed_supply(profile, 1, identity_perm(1),
                               std::min(ell, profile.n()));
}

std::vector<int> random_guess_supply_set(int n) {
    if (n < 2) throw std::out_of_range("random_guess: n >= 2 required");
    std::vector<int> gs;
    for (int g = 2; g <= n; g *= 2) gs.push_back(g);
    if (gs.back() != n) gs.push_back(n);
    return gs;
}

Outcome random_guess(const ValueProfile& profile, int ell, RandomSeed seed) {
    const auto gs = random_guess_supply_set(profile.n());
    Rng rng(seed);
    int g = gs[rng.below(gs.size())];
    return engine_fixed_supply(profile, g, priority_perm(profile, g, rng),
                               std::min(ell, profile.n()));
}

int hazard_guess_supply(const SupplyDistribution& d) {
    int s = s_star(d);
    return s > 3 ? s : 1;
}

Outcome hazard_guess(const SupplyDistribution& d, const ValueProfile& profile,
                     int ell, PermPolicy perm, RandomSeed seed) {
    int g = std::min(hazard_guess_supply(d), profile.n());
    std::vector<int> p;
    if (perm == PermPolicy::SeededRandom) {
        Rng rng(seed);
        p = priority_perm(profile, g, rng);
    } else {
        p = identity_perm(g);
    }
    return engine_fixed_supply(profile, g, p, std::min(ell, profile.n()));
}

Outcome run_mechanism(const MechanismSpec& spec, const ValueProfile& profile,
                      int ell, RandomSeed seed) {
    switch (spec.kind) {
        case MechanismKind::Trivial:
            return trivial(profile, ell);
        case MechanismKind::RandomGuess:
            return random_guess(profile, ell, seed);
        case MechanismKind::HazardGuess:
            return hazard_guess(*spec.dist, profile, ell, spec.perm, seed);
        case MechanismKind::BidIndependent: {
            int g = std::min(spec.g, profile.n());
            std::vector<int> p;
            if (spec.perm == PermPolicy::SeededRandom) {
                Rng rng(seed);
                p = priority_perm(profile, g, rng);
            } else {
                p = identity_perm(g);
            }
            return engine_fixed_supply(profile, g, p, std::min(ell, profile.n()));
        }
    }
    throw std::logic_error("unreachable");
}

double utility(double true_value, const Outcome& outcome, int original_id) {
    for (const Sale& s : outcome.sales)
        if (s.original == original_id) return true_value - s.price;
    return 0.0;
}

namespace {

// Expected welfare of the engine with supply cap g at fixed ell. A uniformly
// random permutation serves a uniformly random min(ell,g)-subset of the top
// g, so the expectation is (min(ell,g)/g) * OPT_g; the identity permutation
// serves the top min(ell,g) directly.
double engine_expected_welfare(const ValueProfile& profile, int g, int ell,
                               PermPolicy perm) {
    g = std::min(g, profile.n());
    int t = std::min(ell, g);
    if (perm == PermPolicy::SeededRandom)
        return profile.opt(g) * static_cast<double>(t) / g;
    return profile.opt(t);
}

}  // namespace

double exact_welfare_at(const MechanismSpec& spec, const ValueProfile& profile,
                        int ell) {
    switch (spec.kind) {
        case MechanismKind::Trivial:
            return engine_expected_welfare(profile, 1, ell, PermPolicy::Identity);
        case MechanismKind::BidIndependent:
            return engine_expected_welfare(profile, spec.g, ell, spec.perm);
        case MechanismKind::HazardGuess:
            return engine_expected_welfare(profile, hazard_guess_supply(*spec.dist),
                                           ell, spec.perm);
        case MechanismKind::RandomGuess: {
            const auto gs = random_guess_supply_set(profile.n());
            double total = 0.0;
            for (int g : gs)
                total += engine_expected_welfare(profile, g, ell,
                                                 PermPolicy::SeededRandom);
            return total / static_cast<double>(gs.size());
        }
    }
    throw std::logic_error("unreachable");
}

WelfareEstimate expected_welfare(const MechanismSpec& spec,
                                 const ValueProfile& profile,
                                 const SupplyDistribution& d) {
    double total = 0.0;
    for (int ell = 1; ell <= d.n(); ++ell) {
        double p = d.pmf(ell);
        if (p > 0.0) total += p * exact_welfare_at(spec, profile, ell);
    }
    return WelfareEstimate{total, 0.0};
}

WelfareEstimate expected_welfare_mc(const MechanismSpec& spec,
                                    const ValueProfile& profile,
                                    const SupplyDistribution& d, int trials,
                                    RandomSeed seed, int jobs) {
    if (trials < 1) throw std::invalid_argument("trials >= 1 required");
    jobs = std::max(1, jobs);

    auto run_chunk = [&](int lo, int hi, double& sum, double& sumsq) {
        for (int t = lo; t < hi; ++t) {
            RandomSeed sub = seed.derive(static_cast<std::uint64_t>(t));
            Rng supply_rng(sub.derive(0));
            double u = supply_rng.uniform();
            int ell = d.n();
            double acc = 0.0;
            for (int i = 1; i <= d.n(); ++i) {
                acc += d.pmf(i);
                if (u < acc) { ell = i; break; }
            }
            double w = run_mechanism(spec, profile,
                                     std::min(ell, profile.n()), sub.derive(1))
                           .welfare;
            sum += w;
            sumsq += w * w;
        }
    };

    std::vector<double> sums(jobs, 0.0), sumsqs(jobs, 0.0);
    if (jobs == 1) {
        run_chunk(0, trials, sums[0], sumsqs[0]);
    } else {
        std::vector<std::thread> workers;
        int chunk = (trials + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            int lo = j * chunk, hi = std::min(trials, (j + 1) * chunk);
            if (lo >= hi) break;
            workers.emplace_back(run_chunk, lo, hi, std::ref(sums[j]),
                                 std::ref(sumsqs[j]));
        }
        for (auto& w : workers) w.join();
    }
    double sum = 0.0, sumsq = 0.0;
    for (int j = 0; j < jobs; ++j) {
        sum += sums[j];
        sumsq += sumsqs[j];
    }
    double mean = sum / trials;
    double var = std::max(0.0, sumsq / trials - mean * mean);
    return WelfareEstimate{mean, std::sqrt(var / trials)};
}

}  // namespace onsup
