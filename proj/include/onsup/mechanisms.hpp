#pragma once

#include <optional>
#include <string>
#include <vector>

#include "onsup/core.hpp"
#include "onsup/rng.hpp"

namespace onsup {

enum class MechanismKind { Trivial, RandomGuess, HazardGuess, BidIndependent };
enum class PermPolicy { Identity, SeededRandom };

struct MechanismSpec {
    MechanismKind kind = MechanismKind::Trivial;
    PermPolicy perm = PermPolicy::Identity;
    std::optional<SupplyDistribution> dist;  // HazardGuess only
    int g = 1;                               // BidIndependent only

    static MechanismSpec trivial();
    static MechanismSpec random_guess();
    static MechanismSpec hazard_guess(SupplyDistribution d,
                                      PermPolicy perm = PermPolicy::SeededRandom);
    static MechanismSpec bid_independent(int g, PermPolicy perm = PermPolicy::Identity);

    // "trivial", "randomguess", "hazardguess:<distribution record>", "fixed:<g>".
    static MechanismSpec parse(const std::string& text,
                               const std::optional<SupplyDistribution>& dist = {},
                               PermPolicy perm = PermPolicy::Identity);
    std::string name() const;
};

struct Sale {
    int item = 0;      // 1-based arrival index
    int bidder = 0;    // sorted rank, 1-based
    int original = 0;  // original input position, 1-based
    double price = 0.0;
};

struct Outcome {
    std::vector<Sale> sales;
    double welfare = 0.0;

    bool won(int original_id) const;
    // Arrival index of the item the bidder won, or 0.
    int sale_position(int original_id) const;
    double price_paid(int original_id) const;
};

// Sells items 1..min(ell, g) to the top-g bidders (value desc, original index
// asc) in the order given by perm (a permutation of {0..g-1} over the
// selected slots), all at price v_{g+1}, or 0 when g = n.
Outcome engine_fixed_supply(const ValueProfile& profile, int g,
                            const std::vector<int>& perm, int ell);

Outcome trivial(const ValueProfile& profile, int ell);

// g uniform over {2,4,...,2^floor(log2 n)} plus n if absent, random
// permutation of the selected bidders; both drawn from seed.
Outcome random_guess(const ValueProfile& profile, int ell, RandomSeed seed);

Outcome hazard_guess(const SupplyDistribution& d, const ValueProfile& profile,
                     int ell, PermPolicy perm, RandomSeed seed);

// Supply cap the mechanism commits to: s_star(d) when > 3, else 1. Never
// depends on the bids.
int hazard_guess_supply(const SupplyDistribution& d);

std::vector<int> random_guess_supply_set(int n);

Outcome run_mechanism(const MechanismSpec& spec, const ValueProfile& profile,
                      int ell, RandomSeed seed);

double utility(double true_value, const Outcome& outcome, int original_id);

struct WelfareEstimate {
    double value = 0.0;
    double std_error = 0.0;  // 0 for exact modes
};

// Expected welfare for a fixed supply ell, exact over mechanism randomness
// (uniform g choice; random permutations via the position average
// E[W] = (min(ell,g)/g) * OPT_g).
double exact_welfare_at(const MechanismSpec& spec, const ValueProfile& profile,
                        int ell);

// E_{l,r}[W] with l ~ d: exact enumeration, or Monte Carlo with a reported
// standard error. `jobs` > 1 fans trials out to that many workers.
WelfareEstimate expected_welfare(const MechanismSpec& spec,
                                 const ValueProfile& profile,
                                 const SupplyDistribution& d);
WelfareEstimate expected_welfare_mc(const MechanismSpec& spec,
                                    const ValueProfile& profile,
                                    const SupplyDistribution& d, int trials,
                                    RandomSeed seed, int jobs = 1);

}  // namespace onsup
