#pragma once

#include <utility>

#include "besovlab/common.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// LorentzParams: (p, r) with 1 < p < infinity and 1 <= r <= infinity, the
// range on which L^{p,r} is normable. r = kInf selects the weak form.
// ---------------------------------------------------------------------------
struct LorentzParams {
    double p = 2.0;
    double r = 2.0;
    void validate() const;
    bool weak() const { return is_inf(r); }
};

// ---------------------------------------------------------------------------
// WeightedValueSet: a finite multiset of (magnitude, mass) pairs, the
// pushforward measure behind every Lorentz quasi-norm in the project. The
// distribution function mu(lambda) = sum of masses with magnitude > lambda
// (strict inequality, right-continuous) is a step function, so all quasi-norm
// integrals reduce to closed-form sums over consecutive breakpoints.
// Construction sorts once; the object is immutable afterwards.
// ---------------------------------------------------------------------------
class WeightedValueSet {
public:
    WeightedValueSet() = default;
    explicit WeightedValueSet(std::vector<std::pair<double, double>> pairs);

    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return levels_.empty(); }
    double total_mass() const { return total_mass_; }
    double max_magnitude() const { return levels_.empty() ? 0.0 : levels_.back(); }

    const std::vector<std::pair<double, double>>& pairs() const { return pairs_; }
    /// Distinct positive magnitudes, ascending.
    const std::vector<double>& levels() const { return levels_; }
    /// tail_mass()[i] = sum of masses with magnitude >= levels()[i].
    const std::vector<double>& tail_mass() const { return tail_mass_; }

    WeightedValueSet scaled(double c) const; // magnitudes scaled by c > 0

private:
    std::vector<std::pair<double, double>> pairs_;
    std::vector<double> levels_;
    std::vector<double> tail_mass_;
    double total_mass_ = 0.0;
};

/// Incremental assembly for large pushforwards; zero-mass entries are ignored.
class WeightedValueSetBuilder {
public:
    void reserve(std::size_t n) { pairs_.reserve(n); }
    void add(double magnitude, double mass) {
        if (mass != 0.0) pairs_.emplace_back(magnitude, mass);
    }
    WeightedValueSet build() { return WeightedValueSet(std::move(pairs_)); }

private:
    std::vector<std::pair<double, double>> pairs_;
};

/// mu({|g| > lambda}) for lambda >= 0.
double distribution(const WeightedValueSet& v, double lambda);

/// The bracket quasi-norm [g]_{L^{p,r}}: for finite r,
/// (r * integral_0^inf lambda^r mu(lambda)^{r/p} dlambda/lambda)^{1/r},
/// evaluated exactly on the step distribution function; for r = inf the weak
/// form sup_lambda lambda * mu(lambda)^{1/p}.
double quasi_norm(const WeightedValueSet& v, const LorentzParams& params);

/// sup over breakpoints of lambda * mu(lambda)^{1/p}; equals quasi_norm with
/// r = inf exactly.
double weak_norm(const WeightedValueSet& v, double p);

/// Maximal-average norm (integral [t^{1/p} g**(t)]^r dt/t)^{1/r} with
/// g**(t) = t^{-1} integral_0^t g*(s) ds, g* the nonincreasing rearrangement.
/// Provided for normability checks only; the bracket quasi-norm is the
/// primary computed quantity.
double hunt_norm(const WeightedValueSet& v, const LorentzParams& params);

/// Independent validation path: dense lambda-quadrature of the distribution
/// integral against a linear-scan distribution function. Used only in tests.
double brute_force_oracle(const WeightedValueSet& v, const LorentzParams& params);

WeightedValueSet load_value_set_csv(const std::string& path);
void save_value_set_csv(const WeightedValueSet& v, const std::string& path);

} // namespace besovlab
