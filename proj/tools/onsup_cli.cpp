// Experiment harness for the online-supply auction library.
//
// Subcommands: simulate, verify, lowerbound, knapsack. All runs are
// deterministic given --seed; every output begins with the master seed and a
// hash of the resolved configuration.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "onsup/core.hpp"
#include "onsup/knapsack.hpp"
#include "onsup/lowerbounds.hpp"
#include "onsup/mechanisms.hpp"
#include "onsup/verify.hpp"

namespace {

using namespace onsup;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "@path" loads from a file, anything else is taken inline.
std::string inline_or_file(const std::string& text) {
    if (!text.empty() && text[0] == '@') return slurp(text.substr(1));
    return text;
}

struct Options {
    std::string mechanism = "trivial";
    std::string dist;
    std::string profile;
    std::string bids;
    std::string perm = "random";
    std::string out;
    std::string solver = "exact";
    std::string mode = "adversarial";
    int n = 8;
    int k = 1;
    int m = 4;
    int ell = -1;
    int trials = 50;
    int jobs = 1;
    std::uint64_t seed = 1;
    double tol = 1e-9;

    std::string canonical() const {
        std::ostringstream os;
        os << mechanism << '|' << dist << '|' << profile << '|' << bids << '|'
           << perm << '|' << solver << '|' << mode << '|' << n << '|' << k << '|'
           << m << '|' << ell << '|' << trials << '|' << jobs << '|' << seed
           << '|' << tol;
        return os.str();
    }
};

std::ostream& open_out(const Options& opt, std::ofstream& file) {
    if (opt.out.empty()) return std::cout;
    file.open(opt.out);
    if (!file) throw CLI::ValidationError("cannot write file: " + opt.out);
    return file;
}

void emit_header(std::ostream& os, const Options& opt) {
    os << "# seed=" << opt.seed << " config_hash=" << std::hex
       << fnv1a(opt.canonical()) << std::dec << "\n";
}

PermPolicy perm_policy(const Options& opt) {
    if (opt.perm == "identity") return PermPolicy::Identity;
    if (opt.perm == "random") return PermPolicy::SeededRandom;
    throw CLI::ValidationError("--perm must be identity or random");
}

ValueProfile resolve_profile(const Options& opt) {
    std::string text = inline_or_file(opt.profile);
    if (text.empty()) throw CLI::ValidationError("--profile is required");
    if (text.rfind("gen:", 0) == 0) {
        std::string kind = text.substr(4);
        Rng rng(RandomSeed{opt.seed, 0x9f0fULL});
        if (kind == "random") return random_profile(opt.n, rng);
        if (kind == "ones") return ValueProfile(std::vector<double>(opt.n, 1.0));
        if (kind == "single") {
            std::vector<double> v(opt.n, 0.0);
            v[0] = 1.0;
            return ValueProfile(std::move(v));
        }
        if (kind == "v") return sample_profile_v(opt.n, RandomSeed{opt.seed, 0x9f0fULL});
        throw CLI::ValidationError("unknown profile generator: " + kind);
    }
    return ValueProfile::parse(text);
}

std::optional<SupplyDistribution> resolve_dist(const Options& opt) {
    if (opt.dist.empty()) return std::nullopt;
    std::string text = inline_or_file(opt.dist);
    // Shorthand: a bare kind name expands with --n.
    if (text.find('=') == std::string::npos)
        text = "kind=" + text + "; n=" + std::to_string(opt.n);
    return parse_distribution(text);
}

MechanismSpec resolve_mechanism(const Options& opt) {
    return MechanismSpec::parse(opt.mechanism, resolve_dist(opt), perm_policy(opt));
}

int cmd_simulate(const Options& opt) {
    ValueProfile profile = resolve_profile(opt);
    MechanismSpec spec = resolve_mechanism(opt);
    std::ofstream file;
    std::ostream& os = open_out(opt, file);
    emit_header(os, opt);
    os << "mechanism,n,distribution,seed,ell,welfare,opt_ell,price\n";
    os.precision(17);

    const int n = profile.n();
    auto dist = resolve_dist(opt);
    // CSV-safe distribution label: the record text contains commas.
    std::string dist_label = dist ? dist->record() : std::string("-");
    for (char& c : dist_label)
        if (c == ',' || c == ' ') c = c == ',' ? '|' : '_';
    auto emit_row = [&](int trial, int ell) {
        RandomSeed sub = RandomSeed{opt.seed, 0}.derive(trial);
        Outcome out = run_mechanism(spec, profile, ell, sub);
        double price = out.sales.empty() ? 0.0 : out.sales.front().price;
        os << spec.name() << ',' << n << ',' << dist_label << ',' << sub.stream
           << ',' << ell << ',' << out.welfare << ','
           << profile.opt(std::min(ell, n)) << ',' << price << "\n";
    };

    if (opt.mode == "adversarial") {
        for (int ell = 0; ell <= n; ++ell)
            for (int t = 0; t < opt.trials; ++t) emit_row(t, ell);
        RatioReport r = adversarial_ratio(spec, profile);
        for (const RatioEntry& e : r.per_ell)
            os << "# ell=" << e.ell << " opt=" << e.opt
               << " expected_welfare=" << e.welfare << "\n";
        os << "# adversarial_ratio=" << r.ratio << "\n";
    } else if (opt.mode == "stochastic") {
        if (!dist) throw CLI::ValidationError("stochastic mode needs --dist");
        Rng supply_rng(RandomSeed{opt.seed, 0x51ULL});
        for (int t = 0; t < opt.trials; ++t) {
            double u = supply_rng.uniform();
            int ell = dist->n();
            double acc = 0.0;
            for (int i = 1; i <= dist->n(); ++i) {
                acc += dist->pmf(i);
                if (u < acc) { ell = i; break; }
            }
            emit_row(t, std::min(ell, n));
        }
        WelfareEstimate ew = expected_welfare(spec, profile, *dist);
        double eopt = expected_opt(profile, *dist);
        os << "# expected_welfare=" << ew.value << " expected_opt=" << eopt
           << " ratio=" << eopt / ew.value << "\n";
    } else {
        throw CLI::ValidationError("--mode must be adversarial or stochastic");
    }
    return 0;
}

MechanismRunner resolve_runner(const Options& opt) {
    if (opt.mechanism == "firstprice") return first_price_control(2);
    if (opt.mechanism == "discriminatory") return discriminatory_control(4);
    return make_runner(resolve_mechanism(opt));
}

int cmd_verify(const Options& opt, const std::string& which) {
    std::ofstream file;
    std::ostream& os = open_out(opt, file);
    emit_header(os, opt);
    os.precision(17);

    std::vector<RandomSeed> seeds;
    for (int t = 0; t < std::max(1, opt.trials); ++t)
        seeds.push_back(RandomSeed{opt.seed, 0}.derive(t));

    if (which == "truthful" || which == "envy") {
        ValueProfile profile = resolve_profile(opt);
        std::vector<double> raw(profile.n());
        for (int i = 1; i <= profile.n(); ++i)
            raw[profile.original_id(i) - 1] = profile.value(i);
        MechanismRunner runner = resolve_runner(opt);
        ViolationReport report =
            which == "truthful"
                ? check_truthful(runner, raw, seeds, opt.tol)
                : check_online_envy_free(runner, raw, seeds, opt.tol);
        os << "check=" << which << " mechanism=" << opt.mechanism << " n="
           << profile.n() << "\n";
        os << report.describe() << "\n";
        return report.empty() ? 0 : 1;
    }

    if (which == "lemmas") {
        bool ok = true;
        Rng rng(RandomSeed{opt.seed, 0x351ULL});
        int draws = std::max(1, opt.trials);
        for (int t = 0; t < draws; ++t) {
            int s = 1 + static_cast<int>(rng.below(32));
            int len = static_cast<int>(rng.below(64));
            std::vector<double> h(len);
            for (double& x : h) x = rng.uniform(1.0 / s, 1.0);
            LemmaCheck c = check_lemma_3s1(s, h, opt.tol);
            if (!c.holds) {
                os << "lemma_3s1 FAILED: s=" << s << " lhs=" << c.lhs << "\n";
                ok = false;
            }
        }
        os << "lemma_3s1: " << draws << " draws checked\n";
        int sweeps = std::max(1, opt.trials / 10);
        Rng mhr_rng(RandomSeed{opt.seed, 0xb5ULL});
        for (int t = 0; t < sweeps; ++t) {
            int n = 2 + static_cast<int>(mhr_rng.below(63));
            SupplyDistribution d = random_mhr_distribution(n, mhr_rng);
            ValueProfile p = random_profile(n, mhr_rng);
            Bound5Check c = check_bound5(d, p, opt.tol);
            if (!c.holds) {
                os << "bound5 FAILED: n=" << n << " min_bound=" << c.min_bound
                   << " direct=" << c.direct_ratio << "\n";
                ok = false;
            }
        }
        os << "bound5: " << sweeps << " MHR draws checked\n";
        os << (ok ? "lemmas: ok\n" : "lemmas: violations found\n");
        return ok ? 0 : 1;
    }
    throw CLI::ValidationError("verify: unknown check '" + which + "'");
}

int cmd_lowerbound(const Options& opt, const std::string& which) {
    std::ofstream file;
    std::ostream& os = open_out(opt, file);
    emit_header(os, opt);
    os.precision(17);
    os << "experiment,n,g,param,value\n";

    if (which == "optk") {
        HarmonicBoundResult r =
            mc_opt_k_bound(opt.n, opt.k, opt.trials, RandomSeed{opt.seed, 0});
        os << "optk," << opt.n << ",0,estimate," << r.estimate << "\n";
        os << "optk," << opt.n << ",0,std_error," << r.std_error << "\n";
        os << "optk," << opt.n << ",0,lower_bound," << r.lower_bound << "\n";
        os << "# holds=" << (r.holds ? "yes" : "no") << " margin=" << r.margin
           << "\n";
        return r.holds ? 0 : 1;
    }
    if (which == "tradeoff") {
        TradeoffTable t = bid_independent_tradeoff(opt.n);
        for (const auto& row : t.rows) {
            os << "tradeoff," << opt.n << ',' << row.g << ",single,"
               << row.ratio_single << "\n";
            os << "tradeoff," << opt.n << ',' << row.g << ",all,"
               << row.ratio_all << "\n";
        }
        os << "# best_g=" << t.best_g << " best_min_ratio=" << t.best_min_ratio
           << "\n";
        return 0;
    }
    if (which == "knapsack") {
        KnapsackSeparation sep = knapsack_separation(uniform_rational_pmf(opt.m));
        os << "knapsack," << opt.m << ",0,expected_opt,"
           << static_cast<double>(sep.expected_opt) << "\n";
        os << "knapsack," << opt.m << ",0,best_committed,"
           << static_cast<double>(sep.best_committed) << "\n";
        os << "knapsack," << opt.m << ",0,knapsack_guess,"
           << static_cast<double>(sep.knapsack_guess_welfare) << "\n";
        os << "# exact: expected_opt=" << sep.expected_opt << " best_committed="
           << sep.best_committed << " knapsack_guess="
           << sep.knapsack_guess_welfare << "\n";
        bool tight = sep.best_committed == 1 && sep.knapsack_guess_welfare == 1;
        os << "# holds=" << (tight ? "yes" : "no") << "\n";
        return tight ? 0 : 1;
    }
    if (which == "envyconstraints") {
        int log2n = 0;
        while ((1 << log2n) < opt.n) ++log2n;
        int log2log2n = 0;
        while ((1 << log2log2n) < log2n) ++log2log2n;
        Rat alpha = Rat(log2n, 2 * log2log2n);
        std::vector<int> feasible;
        for (int c = 0; c <= log2n - 1; ++c) {
            EnvyConstraints e = envy_free_constraints(opt.n, c, alpha);
            os << "envyconstraints," << opt.n << ',' << c << ",c1,"
               << (e.c1_holds ? 1 : 0) << "\n";
            os << "envyconstraints," << opt.n << ',' << c << ",c2,"
               << (e.c2_holds ? 1 : 0) << "\n";
            if (e.c1_holds && e.c2_holds) feasible.push_back(c);
        }
        os << "# alpha=" << alpha << " feasible_count=" << feasible.size();
        for (int c : feasible) os << " c=" << c;
        os << "\n";
        return feasible.empty() ? 0 : 1;
    }
    throw CLI::ValidationError("lowerbound: unknown experiment '" + which + "'");
}

int cmd_knapsack(const Options& opt) {
    std::string text = inline_or_file(opt.bids);
    if (text.empty()) throw CLI::ValidationError("--bids is required");
    KnapsackProfile bids = KnapsackProfile::parse(text);
    auto dist = resolve_dist(opt);
    if (!dist) throw CLI::ValidationError("knapsack needs --dist");
    KnapSolver solver = opt.solver == "greedy" ? KnapSolver::Greedy : KnapSolver::Exact;

    std::ofstream file;
    std::ostream& os = open_out(opt, file);
    emit_header(os, opt);
    os.precision(17);

    int star = knapsack_guess_supply(*dist, bids, solver);
    int ell = opt.ell >= 0 ? opt.ell : bids.total_demand();
    Outcome out = knapsack_guess(*dist, bids, ell, solver);
    os << "item,bidder\n";
    for (const Sale& s : out.sales) os << s.item << ',' << s.bidder << "\n";
    os << "# m=" << bids.total_demand() << " s_star=" << star << " ell=" << ell
       << " welfare=" << out.welfare
       << " expected_opt=" << knap_expected_opt(bids, *dist) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online-supply auction simulator and verifier"};
    app.set_config("--config");
    Options opt;

    app.add_option("--mechanism", opt.mechanism,
                   "trivial | randomguess | hazardguess[:<dist>] | fixed:<g> | "
                   "firstprice | discriminatory");
    app.add_option("--dist", opt.dist, "distribution record, kind name, or @file");
    app.add_option("--profile", opt.profile,
                   "comma-separated values, @file, or gen:{random,ones,single,v}");
    app.add_option("--bids", opt.bids, "knapsack bids 'c:k' lines or @file");
    app.add_option("--n", opt.n, "bidder count for generators");
    app.add_option("--k", opt.k, "supply level for optk");
    app.add_option("--m", opt.m, "knapsack separation size");
    app.add_option("--ell", opt.ell, "realized supply (knapsack)");
    app.add_option("--seed", opt.seed, "master seed");
    app.add_option("--trials", opt.trials, "trial / seed count");
    app.add_option("--perm", opt.perm, "identity | random");
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--jobs", opt.jobs, "worker count for Monte Carlo");
    app.add_option("--tol", opt.tol, "comparison tolerance");
    app.add_option("--solver", opt.solver, "exact | greedy");
    app.add_option("--mode", opt.mode, "adversarial | stochastic");

    auto* sim = app.add_subcommand("simulate", "run a mechanism, emit CSV rows");
    auto* ver = app.add_subcommand("verify", "truthfulness / envy / lemma checks");
    std::string which_check = "truthful";
    ver->add_option("which", which_check, "truthful | envy | lemmas");
    auto* low = app.add_subcommand("lowerbound", "lower-bound experiments");
    std::string which_exp = "optk";
    low->add_option("which", which_exp, "optk | tradeoff | knapsack | envyconstraints");
    auto* knap = app.add_subcommand("knapsack", "knapsack mechanism run");
    app.require_subcommand(1);
    for (CLI::App* s : {sim, ver, low, knap}) s->fallthrough();

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(opt);
        if (ver->parsed()) return cmd_verify(opt, which_check);
        if (low->parsed()) return cmd_lowerbound(opt, which_exp);
        if (knap->parsed()) return cmd_knapsack(opt);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
