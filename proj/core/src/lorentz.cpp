#include "besovlab/lorentz.hpp"

#include <algorithm>
#include <fstream>

namespace besovlab {

void LorentzParams::validate() const {
    if (!(p > 1.0) || is_inf(p)) throw validation_error("LorentzParams: need 1 < p < inf");
    if (!(r >= 1.0)) throw validation_error("LorentzParams: need 1 <= r <= inf");
}

WeightedValueSet::WeightedValueSet(std::vector<std::pair<double, double>> pairs)
    : pairs_(std::move(pairs)) {
    KahanSum total;
    for (const auto& [mag, mass] : pairs_) {
        if (!std::isfinite(mag) || mag < 0.0)
            throw validation_error("WeightedValueSet: magnitudes must be finite and >= 0");
        if (!std::isfinite(mass) || mass <= 0.0)
            throw validation_error("WeightedValueSet: masses must be finite and > 0");
        total.add(mass);
    }
    total_mass_ = total.value();

    std::vector<std::pair<double, double>> sorted = pairs_;
    std::sort(sorted.begin(), sorted.end());
    // Aggregate equal magnitudes, drop zeros (they never exceed lambda >= 0).
    std::vector<double> level_mass;
    for (const auto& [mag, mass] : sorted) {
        if (mag == 0.0) continue;
        if (!levels_.empty() && levels_.back() == mag) {
            level_mass.back() += mass;
        } else {
            levels_.push_back(mag);
            level_mass.push_back(mass);
        }
    }
    tail_mass_.resize(levels_.size());
    KahanSum tail;
    for (std::size_t i = levels_.size(); i-- > 0;) {
        tail.add(level_mass[i]);
        tail_mass_[i] = tail.value();
    }
}

WeightedValueSet WeightedValueSet::scaled(double c) const {
    if (!(c > 0.0)) throw validation_error("WeightedValueSet::scaled: need c > 0");
    std::vector<std::pair<double, double>> scaled_pairs = pairs_;
    for (auto& [mag, mass] : scaled_pairs) mag *= c;
    return WeightedValueSet(std::move(scaled_pairs));
}

double distribution(const WeightedValueSet& v, double lambda) {
    if (lambda < 0.0) throw validation_error("distribution: lambda must be >= 0");
    const auto& levels = v.levels();
    // First level strictly greater than lambda.
    auto it = std::upper_bound(levels.begin(), levels.end(), lambda);
    if (it == levels.end()) return 0.0;
    return v.tail_mass()[static_cast<std::size_t>(it - levels.begin())];
}

double weak_norm(const WeightedValueSet& v, double p) {
    LorentzParams{p, kInf}.validate();
    const auto& levels = v.levels();
    const auto& tails = v.tail_mass();
    double best = 0.0;
    // On [v_{i-1}, v_i) the distribution equals tails[i], so the supremum of
    // lambda * mu^{1/p} over the piece is attained at lambda -> v_i.
    for (std::size_t i = 0; i < levels.size(); ++i)
        best = std::max(best, levels[i] * std::pow(tails[i], 1.0 / p));
    return best;
}

double quasi_norm(const WeightedValueSet& v, const LorentzParams& params) {
    params.validate();
    if (params.weak()) return weak_norm(v, params.p);
    const auto& levels = v.levels();
    const auto& tails = v.tail_mass();
    const double r = params.r;
    const double rp = r / params.p;
    KahanSum acc;
    double prev_pow = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double cur_pow = std::pow(levels[i], r);
        acc.add(std::pow(tails[i], rp) * (cur_pow - prev_pow));
        prev_pow = cur_pow;
    }
    const double value = std::pow(acc.value(), 1.0 / r);
    if (!std::isfinite(value) && !levels.empty())
        throw validation_error("quasi_norm: non-finite result");
    return value;
}

namespace {

// Nonincreasing rearrangement as level data: heights u_1 > u_2 > ... with
// plateau widths m_j, prefix widths S_j and prefix integrals A_j.
struct Rearrangement {
    std::vector<double> height;
    std::vector<double> width;
    std::vector<double> prefix_width;    // S_j
    std::vector<double> prefix_integral; // A_j = integral_0^{S_j} g*
};

Rearrangement rearrange(const WeightedValueSet& v) {
    Rearrangement out;
    const auto& levels = v.levels();
    const auto& tails = v.tail_mass();
    const std::size_t k = levels.size();
    out.height.reserve(k);
    out.width.reserve(k);
    for (std::size_t i = k; i-- > 0;) {
        const double mass = tails[i] - (i + 1 < k ? tails[i + 1] : 0.0);
        out.height.push_back(levels[i]);
        out.width.push_back(mass);
    }
    KahanSum sw, si;
    for (std::size_t j = 0; j < out.height.size(); ++j) {
        sw.add(out.width[j]);
        si.add(out.width[j] * out.height[j]);
        out.prefix_width.push_back(sw.value());
        out.prefix_integral.push_back(si.value());
    }
    return out;
}

} // namespace

double hunt_norm(const WeightedValueSet& v, const LorentzParams& params) {
    params.validate();
    if (v.empty()) return 0.0;
    const Rearrangement g = rearrange(v);
    const std::size_t k = g.height.size();
    const double p = params.p;
    const double total_width = g.prefix_width.back();
    const double total_integral = g.prefix_integral.back();

    if (params.weak()) {
        // On each plateau t^{1/p} g**(t) attains its maximum at an endpoint,
        // and on the tail it decreases, so the supremum is over the S_j.
        double best = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            best = std::max(best, g.prefix_integral[j] *
                                      std::pow(g.prefix_width[j], 1.0 / p - 1.0));
        return best;
    }

    const double r = params.r;
    KahanSum acc;
    // First plateau: g** = u_1, closed form.
    acc.add(std::pow(g.height[0], r) * std::pow(g.prefix_width[0], r / p) * p / r);
    // Later plateaus: smooth integrand, Gauss-Legendre panels.
    for (std::size_t j = 1; j < k; ++j) {
        const double a = g.prefix_width[j - 1];
        const double b = g.prefix_width[j];
        if (!(b > a)) continue;
        const double base = g.prefix_integral[j - 1];
        const double u = g.height[j];
        auto integrand = [&](double t) {
            const double gss = (base + u * (t - a)) / t;
            return std::pow(t, r / p - 1.0) * std::pow(gss, r);
        };
        acc.add(gl_integrate(integrand, a, b, 48));
    }
    // Tail t > W: g** = A_K / t; integral converges since p > 1.
    acc.add(std::pow(total_integral, r) * std::pow(total_width, r / p - r) * p /
            (r * (p - 1.0)));
    const double value = std::pow(acc.value(), 1.0 / r);
    if (!std::isfinite(value))
        throw validation_error("hunt_norm: divergent integral for the given data");
    return value;
}

namespace {

double distribution_linear_scan(const WeightedValueSet& v, double lambda) {
    KahanSum s;
    for (const auto& [mag, mass] : v.pairs())
        if (mag > lambda) s.add(mass);
    return s.value();
}

} // namespace

double brute_force_oracle(const WeightedValueSet& v, const LorentzParams& params) {
    params.validate();
    if (v.empty()) return 0.0;
    const auto& levels = v.levels();
    if (params.weak()) {
        double best = 0.0;
        for (double level : levels) {
            const double lambda = level * (1.0 - 5e-13);
            best = std::max(best,
                            lambda * std::pow(distribution_linear_scan(v, lambda),
                                              1.0 / params.p));
        }
        return best;
    }
    const double r = params.r;
    const double rp = r / params.p;
    KahanSum acc;
    double prev = 0.0;
    for (double level : levels) {
        auto integrand = [&](double lambda) {
            return std::pow(lambda, r - 1.0) *
                   std::pow(distribution_linear_scan(v, lambda), rp);
        };
        acc.add(gl_integrate(integrand, prev, level, 32));
        prev = level;
    }
    return std::pow(r * acc.value(), 1.0 / r);
}

WeightedValueSet load_value_set_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("load_value_set_csv: cannot open " + path);
    std::vector<std::pair<double, double>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto parts = split_csv_line(line);
        if (parts.size() != 2)
            throw validation_error("load_value_set_csv: expected 'magnitude,mass'");
        if (parts[0] == "magnitude") continue; // optional header
        pairs.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
    }
    return WeightedValueSet(std::move(pairs));
}

void save_value_set_csv(const WeightedValueSet& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("save_value_set_csv: cannot open " + path);
    out << "magnitude,mass\n";
    for (const auto& [mag, mass] : v.pairs())
        out << format_double(mag) << ',' << format_double(mass) << '\n';
}

} // namespace besovlab
