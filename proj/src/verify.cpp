#include "onsup/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace onsup {

MechanismRunner make_runner(const MechanismSpec& spec) {
    return [spec](const std::vector<double>& raw, int ell, RandomSeed seed) {
        return run_mechanism(spec, ValueProfile(raw), ell, seed);
    };
}

MechanismRunner first_price_control(int g) {
    return [g](const std::vector<double>& raw, int ell, RandomSeed seed) {
        ValueProfile profile(raw);
        MechanismSpec spec = MechanismSpec::bid_independent(std::min(g, profile.n()));
        Outcome out = run_mechanism(spec, profile, ell, seed);
        for (Sale& s : out.sales) s.price = profile.value(s.bidder);
        return out;
    };
}

MechanismRunner discriminatory_control(int g) {
    return [g](const std::vector<double>& raw, int ell, RandomSeed seed) {
        ValueProfile profile(raw);
        int gg = std::min(g, profile.n());
        MechanismSpec spec = MechanismSpec::bid_independent(gg);
        Outcome out = run_mechanism(spec, profile, ell, seed);
        // Bidder-indexed discount keeps every price below the winner's bid
        // but breaks price uniformity.
        for (Sale& s : out.sales)
            s.price *= static_cast<double>(gg - s.item + 1) / gg;
        return out;
    };
}

std::string ViolationReport::describe() const {
    if (empty()) return kind + ": ok";
    std::ostringstream os;
    os.precision(17);
    os << kind << " violation: ";
    if (truthfulness) {
        const auto& w = *truthfulness;
        os << "bidder=" << w.bidder << " true=" << w.true_value
           << " deviation=" << w.deviating_bid << " ell=" << w.ell
           << " seed=" << w.seed.seed << "/" << w.seed.stream
           << " u_truthful=" << w.utility_truthful
           << " u_deviating=" << w.utility_deviating;
    } else if (envy) {
        os << "ell=" << envy->ell << " seed=" << envy->seed.seed << "/"
           << envy->seed.stream << " " << envy->message;
    }
    return os.str();
}

std::vector<double> default_deviation_grid(const std::vector<double>& raw,
                                           int bidder, double eps_rel) {
    std::vector<double> grid;
    grid.push_back(0.0);
    double total = 0.0;
    auto add = [&](double v) {
        double eps = eps_rel * (std::abs(v) + 1.0);
        grid.push_back(v);
        grid.push_back(v + eps);
        if (v - eps >= 0.0) grid.push_back(v - eps);
    };
    for (double v : raw) {
        add(v);
        total += v;
    }
    add(raw.at(bidder - 1));
    grid.push_back(2.0 * total);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

namespace {

struct SaleView {
    int position = 0;  // 0 = never served
    double price = 0.0;
};

SaleView view_for(const Outcome& out, int original_id) {
    for (const Sale& s : out.sales)
        if (s.original == original_id) return {s.item, s.price};
    return {};
}

double utility_at(const SaleView& v, double true_value, int ell) {
    return (v.position > 0 && v.position <= ell) ? true_value - v.price : 0.0;
}

}  // namespace

ViolationReport check_truthful(const MechanismRunner& runner,
                               const std::vector<double>& raw,
                               const std::vector<RandomSeed>& seeds,
                               double tol, double eps_rel) {
    ViolationReport report;
    report.kind = "truthfulness";
    const int n = static_cast<int>(raw.size());
    for (int bidder = 1; bidder <= n; ++bidder) {
        const double true_value = raw[bidder - 1];
        const auto grid = default_deviation_grid(raw, bidder, eps_rel);
        for (RandomSeed seed : seeds) {
            // One full-supply run answers all ell via the prefix property.
            SaleView truth = view_for(runner(raw, n, seed), bidder);
            std::vector<double> deviated = raw;
            for (double bid : grid) {
                if (bid == true_value) continue;
                deviated[bidder - 1] = bid;
                SaleView dev = view_for(runner(deviated, n, seed), bidder);
                for (int ell = 0; ell <= n; ++ell) {
                    double u_t = utility_at(truth, true_value, ell);
                    double u_d = utility_at(dev, true_value, ell);
                    if (u_d > u_t + tol) {
                        report.truthfulness = TruthfulnessWitness{
                            bidder, true_value, bid, ell, seed, u_t, u_d};
                        return report;
                    }
                }
            }
        }
    }
    return report;
}

ViolationReport check_online_envy_free(const MechanismRunner& runner,
                                       const std::vector<double>& raw,
                                       const std::vector<RandomSeed>& seeds,
                                       double tol) {
    ViolationReport report;
    report.kind = "envy";
    const int n = static_cast<int>(raw.size());
    for (RandomSeed seed : seeds) {
        for (int ell = 0; ell <= n; ++ell) {
            Outcome out = runner(raw, ell, seed);
            if (out.sales.empty()) continue;
            double price = out.sales.front().price;
            for (const Sale& s : out.sales) {
                if (std::abs(s.price - price) > tol) {
                    report.kind = "price-uniformity";
                    std::ostringstream os;
                    os.precision(17);
                    os << "item " << s.item << " priced " << s.price
                       << " but item 1 priced " << price;
                    report.envy = EnvyWitness{ell, seed, os.str()};
                    return report;
                }
            }
            if (ell < n) continue;
            // Full supply: offline envy-freeness at the uniform price.
            std::vector<bool> won(n + 1, false);
            for (const Sale& s : out.sales) won[s.original] = true;
            for (int b = 1; b <= n; ++b) {
                double v = raw[b - 1];
                if (won[b] && v < price - tol) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "winner " << b << " has value " << v
                       << " below price " << price;
                    report.envy = EnvyWitness{ell, seed, os.str()};
                    return report;
                }
                if (!won[b] && v > price + tol) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "loser " << b << " has value " << v
                       << " above price " << price;
                    report.envy = EnvyWitness{ell, seed, os.str()};
                    return report;
                }
            }
        }
    }
    return report;
}

RatioReport adversarial_ratio(const MechanismSpec& spec, const ValueProfile& profile) {
    RatioReport report;
    report.mode = "adversarial";
    const int n = profile.n();
    double worst = 0.0;
    bool defined = false;
    for (int ell = 1; ell <= n; ++ell) {
        double opt = profile.opt(ell);
        double w = exact_welfare_at(spec, profile, ell);
        report.per_ell.push_back({ell, opt, w});
        if (opt <= 0.0) continue;
        if (w <= 0.0) throw std::domain_error("adversarial_ratio: zero welfare at positive OPT");
        worst = std::max(worst, opt / w);
        defined = true;
    }
    if (!defined) throw std::domain_error("adversarial_ratio: OPT is zero for every ell");
    report.ratio = worst;
    return report;
}

RatioReport stochastic_ratio(const MechanismSpec& spec, const ValueProfile& profile,
                             const SupplyDistribution& d) {
    RatioReport report;
    report.mode = "stochastic";
    double ew = 0.0, eopt = expected_opt(profile, d);
    for (int ell = 1; ell <= d.n(); ++ell) {
        if (d.pmf(ell) <= 0.0) continue;
        double w = exact_welfare_at(spec, profile, std::min(ell, profile.n()));
        report.per_ell.push_back({ell, profile.opt(std::min(ell, profile.n())), w});
        ew += d.pmf(ell) * w;
    }
    if (eopt <= 0.0) throw std::domain_error("stochastic_ratio: expected OPT is zero");
    if (ew <= 0.0) throw std::domain_error("stochastic_ratio: zero expected welfare");
    report.ratio = eopt / ew;
    return report;
}

RatioReport stochastic_ratio_mc(const MechanismSpec& spec, const ValueProfile& profile,
                                const SupplyDistribution& d, int trials,
                                RandomSeed seed, int jobs) {
    WelfareEstimate est = expected_welfare_mc(spec, profile, d, trials, seed, jobs);
    double eopt = expected_opt(profile, d);
    if (eopt <= 0.0) throw std::domain_error("stochastic_ratio: expected OPT is zero");
    if (est.value <= 0.0) throw std::domain_error("stochastic_ratio: zero expected welfare");
    RatioReport report;
    report.mode = "stochastic";
    report.ratio = eopt / est.value;
    // First-order propagation of the welfare error through OPT/W.
    report.std_error = eopt * est.std_error / (est.value * est.value);
    return report;
}

LemmaCheck check_lemma_3s1(int s, const std::vector<double>& h, double tol) {
    if (s < 1) throw std::domain_error("check_lemma_3s1: s >= 1 required");
    for (double x : h) {
        if (x < 1.0 / s - 1e-12 || x > 1.0 + 1e-12)
            throw std::domain_error("check_lemma_3s1: h_i must lie in [1/s, 1]");
    }
    double lhs = 0.0, prod = 1.0;
    for (std::size_t idx = 0; idx < h.size(); ++idx) {
        int i = s + 1 + static_cast<int>(idx);
        lhs += i * h[idx] * prod;
        prod *= 1.0 - h[idx];
    }
    return LemmaCheck{lhs, lhs <= 3.0 * s + 1.0 + tol};
}

Bound5Check check_bound5(const SupplyDistribution& d, const ValueProfile& profile,
                         double tol) {
    if (!is_mhr(d, 1e-9))
        throw std::invalid_argument("check_bound5: distribution is not MHR");
    double min_bound = std::numeric_limits<double>::infinity();
    for (int s = 0; s <= d.n() - 1; ++s) {
        if (d.survival(s + 1) <= 0.0) break;
        min_bound = std::min(min_bound, bound_s(d, s));
    }
    double direct = 0.0;
    double best = best_fixed_supply(profile, d).value;
    double eopt = expected_opt(profile, d);
    direct = best > 0.0 ? eopt / best : (eopt > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    bool holds = min_bound <= 5.0 + tol && direct <= 5.0 + tol;
    return Bound5Check{min_bound, direct, holds};
}

EnvyConstraints envy_free_constraints(int n, int c, const Rat& alpha) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw std::invalid_argument("envy_free_constraints: n must be a power of two >= 4");
    int log2n = 0;
    while ((1 << log2n) < n) ++log2n;
    if (c < 0 || c > log2n - 1)
        throw std::invalid_argument("envy_free_constraints: c out of [0, log2 n - 1]");
    if (alpha <= 0) throw std::invalid_argument("envy_free_constraints: alpha > 0 required");

    EnvyConstraints out;
    out.lhs1 = Rat(n) * c;
    out.rhs1 = Rat(n - 1) * log2n / (2 * alpha) - n;
    out.c1_holds = out.lhs1 >= out.rhs1;

    // Second constraint with q = N/D: multiply through by
    // 2*alpha * D^(n-1) * (D - N) so both sides are plain integers. Boost's
    // rational normalization runs a bit-by-bit gcd that takes minutes once an
    // operand reaches megabit size (n = 2^16), even against a small number,
    // so no rational with a huge component is ever divided or multiplied.
    using boost::multiprecision::cpp_int;
    const cpp_int D = n - 1;
    const cpp_int N = cpp_int(n) - (cpp_int(1) << (c + 1));
    const cpp_int scale = pow(D, n - 1) * (D - N);
    const cpp_int geo = pow(D, static_cast<unsigned>(n)) -
                        pow(N, static_cast<unsigned>(n));  // (1-q^n)/(1-q) scaled
    out.lhs2 = Rat(2 * cpp_int(numerator(alpha)) * (c + 1) * geo);
    out.rhs2 = Rat(cpp_int(denominator(alpha)) * (n - 1) * scale);
    out.c2_holds = out.lhs2 >= out.rhs2;
    return out;
}

SupplyDistribution random_mhr_distribution(int n, Rng& rng) {
    for (;;) {
        int pick = static_cast<int>(rng.below(4));
        SupplyDistribution base = [&]() -> SupplyDistribution {
            switch (pick) {
                case 0: return make_uniform(n);
                case 1: return make_binomial(n, 0.05 + 0.9 * rng.uniform(), n);
                case 2: return make_truncated_geometric(0.05 + 0.9 * rng.uniform(), n);
                default: {
                    // Random two-component mixture, kept only when MHR.
                    auto a = make_binomial(n, 0.05 + 0.9 * rng.uniform(), n);
                    auto b = make_truncated_geometric(0.05 + 0.9 * rng.uniform(), n);
                    double w = rng.uniform();
                    std::vector<double> pmf(n);
                    for (int i = 0; i < n; ++i)
                        pmf[i] = w * a.probabilities()[i] + (1 - w) * b.probabilities()[i];
                    return SupplyDistribution(std::move(pmf));
                }
            }
        }();
        if (is_mhr(base, 1e-12)) return base;
    }
}

ValueProfile random_profile(int n, Rng& rng) {
    std::vector<double> vals(n);
    for (double& v : vals) v = rng.uniform();
    return ValueProfile(std::move(vals));
}

}  // namespace onsup
