#include "onsup/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace onsup {

ValueProfile::ValueProfile(std::vector<double> raw) {
    if (raw.empty()) throw std::invalid_argument("profile must have n >= 1");
    for (double v : raw) {
        if (!std::isfinite(v) || v < 0)
            throw std::invalid_argument("bid values must be finite and >= 0");
    }
    const int n = static_cast<int>(raw.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return raw[a] > raw[b]; });
    values_.resize(n);
    orig_.resize(n);
    rank_of_.resize(n);
    for (int r = 0; r < n; ++r) {
        values_[r] = raw[idx[r]];
        orig_[r] = idx[r] + 1;
        rank_of_[idx[r]] = r + 1;
    }
    prefix_.resize(n + 1, 0.0);
    for (int k = 0; k < n; ++k) prefix_[k + 1] = prefix_[k] + values_[k];
}

double ValueProfile::opt(int k) const {
    if (k < 0 || k > n()) throw std::out_of_range("opt_k: k out of [0, n]");
    return prefix_[k];
}

ValueProfile ValueProfile::parse(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        vals.push_back(std::stod(tok));
    }
    return ValueProfile(std::move(vals));
}

std::string ValueProfile::to_string() const {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < n(); ++i) {
        if (i) os << ',';
        os << values_[i];
    }
    return os.str();
}

SupplyDistribution::SupplyDistribution(std::vector<double> pmf, double tol,
                                       std::string record)
    : pmf_(std::move(pmf)), record_(std::move(record)) {
    if (pmf_.empty()) throw std::invalid_argument("pmf must be non-empty");
    double total = 0.0;
    for (double p : pmf_) {
        if (!std::isfinite(p) || p < 0)
            throw std::invalid_argument("pmf entries must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > tol)
        throw std::invalid_argument("pmf must sum to 1");
    survival_.resize(pmf_.size());
    double tail = 0.0;
    for (int i = static_cast<int>(pmf_.size()) - 1; i >= 0; --i) {
        tail += pmf_[i];
        survival_[i] = tail;
    }
    if (record_.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "pmf=";
        for (std::size_t i = 0; i < pmf_.size(); ++i) {
            if (i) os << ',';
            os << pmf_[i];
        }
        record_ = os.str();
    }
}

double SupplyDistribution::pmf(int i) const {
    if (i < 1 || i > n()) throw std::out_of_range("pmf: i out of support");
    return pmf_[i - 1];
}

double SupplyDistribution::survival(int i) const {
    if (i < 1 || i > n() + 1) throw std::out_of_range("survival: i out of support");
    return i == n() + 1 ? 0.0 : survival_[i - 1];
}

double SupplyDistribution::hazard(int i) const {
    double s = survival(i);
    if (s <= 0.0) throw std::domain_error("hazard undefined: survival is zero");
    return pmf_[i - 1] / s;
}

double SupplyDistribution::mean() const {
    double m = 0.0;
    for (int i = 1; i <= n(); ++i) m += i * pmf_[i - 1];
    return m;
}

double opt_k(const ValueProfile& profile, int k) { return profile.opt(k); }

double expected_opt(const ValueProfile& profile, const SupplyDistribution& d) {
    double total = 0.0;
    for (int i = 1; i <= d.n(); ++i)
        total += profile.opt(std::min(i, profile.n())) * d.pmf(i);
    return total;
}

double hazard(const SupplyDistribution& d, int i) { return d.hazard(i); }
double survival(const SupplyDistribution& d, int i) { return d.survival(i); }

bool is_mhr(const SupplyDistribution& d, double tol) {
    double prev = -1.0;
    for (int i = 1; i <= d.n(); ++i) {
        if (d.survival(i) <= 0.0) break;
        double h = d.hazard(i);
        if (prev >= 0.0 && h < prev - tol) return false;
        prev = h;
    }
    return true;
}

int s_star(const SupplyDistribution& d) {
    for (int s = 1; s <= d.n(); ++s) {
        double p = d.pmf(s);
        if (p <= 0.0) continue;  // survival/0 is +inf: condition unsatisfied
        if (s * p >= d.survival(s)) return s;
    }
    return d.n();
}

double bound_s(const SupplyDistribution& d, int s) {
    if (s < 0 || s > d.n() - 1) throw std::out_of_range("bound_s: s out of [0, n-1]");
    double tail_survival = d.survival(s + 1);
    if (tail_survival <= 0.0)
        throw std::domain_error("bound_s undefined: survival(s+1) is zero");
    double head = 0.0;
    for (int i = 1; i <= s; ++i) head += d.hazard(i);
    double tail = 0.0;
    for (int i = s + 1; i <= d.n(); ++i) tail += i * d.pmf(i);
    return head + tail / ((s + 1) * tail_survival);
}

FixedSupplyChoice best_fixed_supply(const ValueProfile& profile,
                                    const SupplyDistribution& d) {
    FixedSupplyChoice best{0, -1.0};
    for (int i = 1; i <= d.n(); ++i) {
        double v = profile.opt(std::min(i, profile.n())) * d.survival(i);
        if (v > best.value) best = {i, v};
    }
    return best;
}

namespace {

std::string named_record(const std::string& kind, int n, const std::string& params) {
    std::ostringstream os;
    os << "kind=" << kind << "; n=" << n;
    if (!params.empty()) os << "; params=" << params;
    return os.str();
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

SupplyDistribution make_uniform(int n) {
    require(n >= 1, "uniform: n >= 1 required");
    std::vector<double> pmf(n, 1.0 / n);
    return SupplyDistribution(std::move(pmf), 1e-9, named_record("uniform", n, ""));
}

SupplyDistribution make_point(int k, int n) {
    require(n >= 1 && k >= 1 && k <= n, "point: need 1 <= k <= n");
    std::vector<double> pmf(n, 0.0);
    pmf[k - 1] = 1.0;
    return SupplyDistribution(std::move(pmf), 1e-9,
                              named_record("point", n, "k=" + std::to_string(k)));
}

SupplyDistribution make_binomial(int trials, double p, int n) {
    require(trials >= 1 && trials <= n, "binomial: need 1 <= trials <= n");
    require(p > 0.0 && p <= 1.0, "binomial: need p in (0, 1]");
    std::vector<double> pmf(n, 0.0);
    // Pr[X = i] for Binomial(trials, p), then condition on X >= 1.
    double mass0 = std::pow(1.0 - p, trials);
    double term = mass0;
    double total = 0.0;
    for (int i = 1; i <= trials; ++i) {
        term *= p / (1.0 - p == 0.0 ? 1.0 : (1.0 - p));
        term *= static_cast<double>(trials - i + 1) / i;
        pmf[i - 1] = term;
        total += term;
    }
    // Guard against p == 1 (term recurrence degenerates).
    if (p == 1.0) {
        std::fill(pmf.begin(), pmf.end(), 0.0);
        pmf[trials - 1] = 1.0;
        total = 1.0;
    }
    for (double& x : pmf) x /= total;
    std::ostringstream params;
    params.precision(17);
    params << "trials=" << trials << ",p=" << p;
    return SupplyDistribution(std::move(pmf), 1e-9,
                              named_record("binomial", n, params.str()));
}

SupplyDistribution make_truncated_geometric(double q, int n) {
    require(n >= 1, "truncated_geometric: n >= 1 required");
    require(q > 0.0 && q < 1.0, "truncated_geometric: need q in (0, 1)");
    std::vector<double> pmf(n);
    double term = 1.0, total = 0.0;
    for (int i = 0; i < n; ++i) {
        pmf[i] = term;
        total += term;
        term *= q;
    }
    for (double& x : pmf) x /= total;
    std::ostringstream params;
    params.precision(17);
    params << "q=" << q;
    return SupplyDistribution(std::move(pmf), 1e-9,
                              named_record("truncated_geometric", n, params.str()));
}

SupplyDistribution make_decreasing_hr(int n) {
    require(n >= 1, "decreasing_hr: n >= 1 required");
    std::vector<double> pmf(n);
    for (int i = 1; i < n; ++i) pmf[i - 1] = 1.0 / (static_cast<double>(i) + static_cast<double>(i) * i);
    pmf[n - 1] = 1.0 / n;
    return SupplyDistribution(std::move(pmf), 1e-9, named_record("decreasing_hr", n, ""));
}

namespace {

// "key=value" pairs split on ';', values may contain ','-separated sub-pairs.
std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

SupplyDistribution parse_distribution(const std::string& record) {
    std::string kind, params;
    int n = -1;
    std::stringstream ss(record);
    std::string field;
    while (std::getline(ss, field, ';')) {
        field = trim(field);
        if (field.empty()) continue;
        auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("distribution record: expected key=value, got '" + field + "'");
        std::string key = trim(field.substr(0, eq));
        std::string val = trim(field.substr(eq + 1));
        if (key == "pmf") {
            std::vector<double> pmf;
            std::stringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ',')) pmf.push_back(std::stod(tok));
            return SupplyDistribution(std::move(pmf));
        } else if (key == "kind") {
            kind = val;
        } else if (key == "n") {
            n = std::stoi(val);
        } else if (key == "params") {
            params = val;
        } else {
            throw std::invalid_argument("distribution record: unknown key '" + key + "'");
        }
    }
    if (kind.empty() || n < 1)
        throw std::invalid_argument("distribution record: need kind and n");

    auto param = [&](const std::string& name) -> std::string {
        std::stringstream ps(params);
        std::string pair;
        while (std::getline(ps, pair, ',')) {
            auto eq = pair.find('=');
            if (eq != std::string::npos && trim(pair.substr(0, eq)) == name)
                return trim(pair.substr(eq + 1));
        }
        throw std::invalid_argument("distribution record: missing param '" + name + "'");
    };

    if (kind == "uniform") return make_uniform(n);
    if (kind == "point") return make_point(std::stoi(param("k")), n);
    if (kind == "binomial")
        return make_binomial(std::stoi(param("trials")), std::stod(param("p")), n);
    if (kind == "truncated_geometric")
        return make_truncated_geometric(std::stod(param("q")), n);
    if (kind == "decreasing_hr") return make_decreasing_hr(n);
    throw std::invalid_argument("distribution record: unknown kind '" + kind + "'");
}

}  // namespace onsup
