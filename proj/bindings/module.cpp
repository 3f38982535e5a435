// Python bindings for the main library operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "onsup/core.hpp"
#include "onsup/knapsack.hpp"
#include "onsup/lowerbounds.hpp"
#include "onsup/mechanisms.hpp"
#include "onsup/verify.hpp"

namespace py = pybind11;
using namespace onsup;

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

KnapsackProfile to_knapsack(const std::vector<std::pair<double, int>>& bids) {
    std::vector<KnapsackBid> converted;
    converted.reserve(bids.size());
    for (const auto& [c, k] : bids) converted.push_back(KnapsackBid{c, k});
    return KnapsackProfile(std::move(converted));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Truthful mechanisms for welfare maximization in online supply";

    py::class_<ValueProfile>(m, "ValueProfile")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_property_readonly("n", &ValueProfile::n)
        .def_property_readonly("values", &ValueProfile::values)
        .def("value", &ValueProfile::value, py::arg("rank"))
        .def("original_id", &ValueProfile::original_id, py::arg("sorted_pos"))
        .def("opt", &ValueProfile::opt, py::arg("k"))
        .def_static("parse", &ValueProfile::parse)
        .def("__repr__", &ValueProfile::to_string);

    py::class_<SupplyDistribution>(m, "SupplyDistribution")
        .def(py::init<std::vector<double>, double, std::string>(), py::arg("pmf"),
             py::arg("tol") = 1e-9, py::arg("record") = "")
        .def_property_readonly("n", &SupplyDistribution::n)
        .def("pmf", &SupplyDistribution::pmf, py::arg("i"))
        .def("survival", &SupplyDistribution::survival, py::arg("i"))
        .def("hazard", &SupplyDistribution::hazard, py::arg("i"))
        .def("mean", &SupplyDistribution::mean)
        .def("record", &SupplyDistribution::record);

    m.def("make_uniform", &make_uniform, py::arg("n"));
    m.def("make_point", &make_point, py::arg("k"), py::arg("n"));
    m.def("make_binomial", &make_binomial, py::arg("trials"), py::arg("p"),
          py::arg("n"));
    m.def("make_truncated_geometric", &make_truncated_geometric, py::arg("q"),
          py::arg("n"));
    m.def("make_decreasing_hr", &make_decreasing_hr, py::arg("n"));
    m.def("parse_distribution", &parse_distribution, py::arg("record"));

    m.def("opt_k", &opt_k, py::arg("profile"), py::arg("k"));
    m.def("expected_opt", &expected_opt, py::arg("profile"), py::arg("dist"));
    m.def("is_mhr", &is_mhr, py::arg("dist"), py::arg("tol") = 1e-12);
    m.def("s_star", &s_star, py::arg("dist"));
    m.def("bound_s", &bound_s, py::arg("dist"), py::arg("s"));
    m.def(
        "best_fixed_supply",
        [](const ValueProfile& p, const SupplyDistribution& d) {
            FixedSupplyChoice c = best_fixed_supply(p, d);
            return std::make_pair(c.g, c.value);
        },
        py::arg("profile"), py::arg("dist"));

    py::class_<Sale>(m, "Sale")
        .def_readonly("item", &Sale::item)
        .def_readonly("bidder", &Sale::bidder)
        .def_readonly("original", &Sale::original)
        .def_readonly("price", &Sale::price);

    py::class_<Outcome>(m, "Outcome")
        .def_readonly("sales", &Outcome::sales)
        .def_readonly("welfare", &Outcome::welfare)
        .def("won", &Outcome::won, py::arg("original_id"))
        .def("price_paid", &Outcome::price_paid, py::arg("original_id"));

    py::class_<MechanismSpec>(m, "MechanismSpec")
        .def_static(
            "parse",
            [](const std::string& text, const std::optional<SupplyDistribution>& d,
               const std::string& perm) {
                PermPolicy p = perm == "identity" ? PermPolicy::Identity
                                                  : PermPolicy::SeededRandom;
                return MechanismSpec::parse(text, d, p);
            },
            py::arg("text"), py::arg("dist") = std::nullopt,
            py::arg("perm") = "random")
        .def("name", &MechanismSpec::name);

    m.def(
        "run_mechanism",
        [](const MechanismSpec& spec, const ValueProfile& profile, int ell,
           std::uint64_t seed, std::uint64_t stream) {
            return run_mechanism(spec, profile, ell, RandomSeed{seed, stream});
        },
        py::arg("spec"), py::arg("profile"), py::arg("ell"), py::arg("seed") = 1,
        py::arg("stream") = 0);
    m.def("hazard_guess_supply", &hazard_guess_supply, py::arg("dist"));
    m.def("random_guess_supply_set", &random_guess_supply_set, py::arg("n"));
    m.def("exact_welfare_at", &exact_welfare_at, py::arg("spec"),
          py::arg("profile"), py::arg("ell"));
    m.def(
        "expected_welfare",
        [](const MechanismSpec& spec, const ValueProfile& p,
           const SupplyDistribution& d) { return expected_welfare(spec, p, d).value; },
        py::arg("spec"), py::arg("profile"), py::arg("dist"));
    m.def(
        "adversarial_ratio",
        [](const MechanismSpec& spec, const ValueProfile& p) {
            return adversarial_ratio(spec, p).ratio;
        },
        py::arg("spec"), py::arg("profile"));
    m.def(
        "stochastic_ratio",
        [](const MechanismSpec& spec, const ValueProfile& p,
           const SupplyDistribution& d) { return stochastic_ratio(spec, p, d).ratio; },
        py::arg("spec"), py::arg("profile"), py::arg("dist"));

    m.def(
        "check_truthful",
        [](const MechanismSpec& spec, const std::vector<double>& raw, int n_seeds,
           std::uint64_t master, double tol) {
            std::vector<RandomSeed> seeds;
            for (int t = 0; t < n_seeds; ++t)
                seeds.push_back(RandomSeed{master, 0}.derive(t));
            ViolationReport r = check_truthful(make_runner(spec), raw, seeds, tol);
            return std::make_pair(r.empty(), r.describe());
        },
        py::arg("spec"), py::arg("values"), py::arg("n_seeds") = 10,
        py::arg("seed") = 1, py::arg("tol") = 1e-9);
    m.def(
        "check_online_envy_free",
        [](const MechanismSpec& spec, const std::vector<double>& raw, int n_seeds,
           std::uint64_t master, double tol) {
            std::vector<RandomSeed> seeds;
            for (int t = 0; t < n_seeds; ++t)
                seeds.push_back(RandomSeed{master, 0}.derive(t));
            ViolationReport r =
                check_online_envy_free(make_runner(spec), raw, seeds, tol);
            return std::make_pair(r.empty(), r.describe());
        },
        py::arg("spec"), py::arg("values"), py::arg("n_seeds") = 10,
        py::arg("seed") = 1, py::arg("tol") = 1e-9);

    m.def(
        "knap_opt",
        [](const std::vector<std::pair<double, int>>& bids, int s) {
            KnapsackSolution sol = knap_opt(to_knapsack(bids), s);
            return std::make_pair(sol.value, sol.chosen);
        },
        py::arg("bids"), py::arg("capacity"));
    m.def(
        "knap_greedy",
        [](const std::vector<std::pair<double, int>>& bids, int s) {
            KnapsackSolution sol = knap_greedy(to_knapsack(bids), s);
            return std::make_pair(sol.value, sol.chosen);
        },
        py::arg("bids"), py::arg("capacity"));
    m.def(
        "knapsack_guess",
        [](const SupplyDistribution& d, const std::vector<std::pair<double, int>>& bids,
           int ell) { return knapsack_guess(d, to_knapsack(bids), ell); },
        py::arg("dist"), py::arg("bids"), py::arg("ell"));
    m.def(
        "knap_expected_opt",
        [](const std::vector<std::pair<double, int>>& bids,
           const SupplyDistribution& d) {
            return knap_expected_opt(to_knapsack(bids), d);
        },
        py::arg("bids"), py::arg("dist"));

    m.def("harmonic", &harmonic, py::arg("k"));
    m.def(
        "mc_opt_k_bound",
        [](int n, int k, int trials, std::uint64_t seed) {
            HarmonicBoundResult r = mc_opt_k_bound(n, k, trials, RandomSeed{seed, 0});
            py::dict out;
            out["estimate"] = r.estimate;
            out["std_error"] = r.std_error;
            out["lower_bound"] = r.lower_bound;
            out["holds"] = r.holds;
            return out;
        },
        py::arg("n"), py::arg("k"), py::arg("trials"), py::arg("seed") = 1);
    m.def(
        "bid_independent_tradeoff",
        [](int n) {
            TradeoffTable t = bid_independent_tradeoff(n);
            std::vector<std::tuple<int, double, double>> rows;
            for (const auto& r : t.rows)
                rows.emplace_back(r.g, r.ratio_single, r.ratio_all);
            return std::make_tuple(rows, t.best_g, t.best_min_ratio);
        },
        py::arg("n"));
    m.def(
        "knapsack_separation",
        [](int m) {
            KnapsackSeparation s = knapsack_separation(uniform_rational_pmf(m));
            py::dict out;
            out["expected_opt"] = rat_str(s.expected_opt);
            out["best_committed"] = rat_str(s.best_committed);
            out["knapsack_guess_welfare"] = rat_str(s.knapsack_guess_welfare);
            return out;
        },
        py::arg("m"));
}
