#include "besovlab/counterexamples.hpp"

#include <mutex>

namespace besovlab {

namespace {

// Smooth bump on (-1, 1).
double unit_bump(double u) {
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

// eta on a wide auxiliary box via one inverse FFT of the radial profile.
// Trapezoid sampling of a smooth compactly supported spectrum is spectrally
// accurate; the box is wide enough that periodization sits below the
// recorded tail bound.
std::vector<double> inverse_transform_table(const std::function<double(double)>& g,
                                            double aux_box, int aux_n) {
    std::vector<complexd> coeffs(aux_n, 0.0);
    const double dxi = 2.0 * kPi / aux_box;
    for (int idx = 0; idx < aux_n; ++idx) {
        const int m = idx < aux_n / 2 ? idx : idx - aux_n;
        const double rho = std::abs(m) * dxi;
        // (1/2pi) int g(|xi|) e^{i xi x} d xi as a Riemann sum.
        coeffs[idx] = g(rho) * dxi / (2.0 * kPi);
    }
    Spectrum spec(1, aux_box, aux_n, std::move(coeffs));
    SampledFunction samples = to_samples(spec);
    std::vector<double> table(aux_n / 2);
    for (int i = 0; i < aux_n / 2; ++i) table[i] = samples[i].real();
    return table;
}

} // namespace

void BumpProfile::finalize() {
    peak_ = 0.0;
    for (double v : table_) peak_ = std::max(peak_, std::abs(v));
    c0_ = peak_;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i * step_ > 1.0) break;
        c0_ = std::min(c0_, std::abs(table_[i]));
    }
    // Measured power-law tail bound on the outer half of the table.
    decay_order_ = 6;
    decay_constant_ = 0.0;
    for (std::size_t i = table_.size() / 2; i < table_.size(); ++i) {
        const double x = i * step_;
        decay_constant_ = std::max(decay_constant_,
                                   std::abs(table_[i]) * std::pow(x, decay_order_));
    }
    cells_.clear();
    cells_.reserve(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) {
        const double measure = i == 0 ? step_ : 2.0 * step_; // both signs of x
        cells_.emplace_back(std::abs(table_[i]), measure);
    }
}

double BumpProfile::operator()(double x) const {
    const double ax = std::abs(x);
    const double pos = ax / step_;
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= table_.size()) return 0.0;
    // Catmull-Rom through the four surrounding table entries.
    const double t = pos - static_cast<double>(i);
    const double y0 = i == 0 ? table_[1] : table_[i - 1]; // even extension
    const double y1 = table_[i];
    const double y2 = table_[i + 1];
    const double y3 = i + 2 < table_.size() ? table_[i + 2] : 0.0;
    const double a = 0.5 * (-y0 + 3.0 * y1 - 3.0 * y2 + y3);
    const double b = y0 - 2.5 * y1 + 2.0 * y2 - 0.5 * y3;
    const double c = 0.5 * (y2 - y0);
    return ((a * t + b) * t + c) * t + y1;
}

AnalyticField BumpProfile::field() const {
    AnalyticField out;
    out.dim = 1;
    out.growth_exponent = 0;
    out.support_radius = extent_;
    out.eval = [this](const Point& x) { return complexd((*this)(x[0]), 0.0); };
    return out;
}

BumpProfile BumpProfile::from_annulus(double rho_lo, double rho_hi) {
    if (!(0.0 < rho_lo && rho_lo < rho_hi))
        throw validation_error("BumpProfile: need 0 < rho_lo < rho_hi");
    BumpProfile out;
    out.rho_lo_ = rho_lo;
    out.rho_hi_ = rho_hi;
    const double mid = 0.5 * (rho_lo + rho_hi);
    const double half = 0.5 * (rho_hi - rho_lo);
    auto g = [=](double rho) { return unit_bump((rho - mid) / half); };
    const double aux_box = 4096.0;
    const int aux_n = 1 << 16;
    out.step_ = aux_box / aux_n;
    out.table_ = inverse_transform_table(g, aux_box, aux_n);
    // Keep the inner half of the box; the rest is periodization guard.
    out.table_.resize(out.table_.size() / 2);
    out.extent_ = out.step_ * static_cast<double>(out.table_.size());
    out.finalize();
    return out;
}

BumpProfile BumpProfile::low_pass(double rho_max) {
    if (!(rho_max > 0.0)) throw validation_error("BumpProfile: rho_max must be > 0");
    BumpProfile out;
    out.rho_lo_ = 0.0;
    out.rho_hi_ = rho_max;
    auto g = [=](double rho) { return unit_bump(rho / rho_max); };
    // Low-pass envelopes vary on scale 1/rho_max; widen the box accordingly.
    const double aux_box = std::max(4096.0, 512.0 / rho_max);
    const int aux_n = 1 << 16;
    out.step_ = aux_box / aux_n;
    out.table_ = inverse_transform_table(g, aux_box, aux_n);
    out.table_.resize(out.table_.size() / 2);
    out.extent_ = out.step_ * static_cast<double>(out.table_.size());
    out.finalize();
    // Scale so the envelope exceeds 1 on |x| <= 1.
    const double factor = 1.02 / out.c0_;
    for (double& v : out.table_) v *= factor;
    out.finalize();
    return out;
}

const BumpProfile& BumpProfile::standard() {
    static std::once_flag flag;
    static BumpProfile* instance = nullptr;
    std::call_once(flag, [] {
        instance = new BumpProfile(from_annulus(15.0 / 16.0, 17.0 / 16.0));
    });
    return *instance;
}

const BumpProfile& BumpProfile::wide() {
    static std::once_flag flag;
    static BumpProfile* instance = nullptr;
    std::call_once(flag, [] { instance = new BumpProfile(from_annulus(0.625, 1.5)); });
    return *instance;
}

const BumpProfile& BumpProfile::envelope() {
    static std::once_flag flag;
    static BumpProfile* instance = nullptr;
    std::call_once(flag, [] { instance = new BumpProfile(low_pass(1.0 / 32.0)); });
    return *instance;
}

VirtualFunction build_F(const CounterexampleSpec& spec, const BumpProfile& profile) {
    if (spec.N < 1) throw validation_error("build_F: N must be >= 1");
    if (!(spec.p > 1.0)) throw validation_error("build_F: p must exceed 1");
    VirtualFunction f;
    f.profile = &profile;
    f.overlap = OverlapModel::Disjoint;
    const bool low = spec.gamma_below_minus_d();
    const int k_first = low ? -2 * spec.N + 1 : spec.N + 1;
    const int k_last = low ? -spec.N : 2 * spec.N;
    for (int k = k_first; k <= k_last; ++k) {
        const double mult = std::floor(std::pow(2.0, k * (1.0 + spec.gamma)));
        if (mult < 1.0)
            throw validation_error("build_F: multiplicity < 1 in the active range");
        if (mult > spec.multiplicity_cap)
            throw validation_error(
                "build_F: multiplicity exceeds cap; reduce N or gamma");
        VirtualBand band;
        band.k = k;
        band.amplitude = std::pow(2.0, -k * (spec.s + spec.gamma / spec.p));
        band.multiplicity = mult;
        f.bands.push_back(band);
    }
    return f;
}

VirtualFunction dilate_virtual(const VirtualFunction& f, int m, double s, double p) {
    VirtualFunction out = f;
    const double factor = std::pow(2.0, m * (1.0 / p - s));
    for (VirtualBand& band : out.bands) {
        band.k += m;
        band.amplitude *= factor;
    }
    return out;
}

VirtualFunction build_log_example(double s, double p, LogExampleVariant variant, int K) {
    if (K < 4) throw validation_error("build_log_example: need K >= 4");
    VirtualFunction f;
    f.profile = &BumpProfile::envelope();
    f.overlap = OverlapModel::SharedCenter;
    for (int k = 3; k <= K; ++k) {
        const double lk = std::log(static_cast<double>(k));
        const double base = std::pow(static_cast<double>(k), -1.0 / p);
        const double amp = variant == LogExampleVariant::DivergentWeak
                               ? base * lk
                               : base / (lk * lk);
        f.bands.push_back({k, std::pow(2.0, -k * s) * amp, 1.0});
    }
    return f;
}

namespace {

// Tail atoms modeling |eta(x)| <= C |x|^{-K} beyond the table: dyadic
// magnitude levels with the measure increments of m(v) = 2 (C/v)^{1/K} - 2R.
std::vector<std::pair<double, double>> tail_atoms(const BumpProfile& profile) {
    std::vector<std::pair<double, double>> atoms;
    const double C = profile.decay_constant();
    const int K = profile.decay_order();
    const double R = profile.table_extent();
    if (C <= 0.0) return atoms;
    const double v_top = C / std::pow(R, K);
    auto meas = [&](double v) {
        return std::max(0.0, 2.0 * std::pow(C / v, 1.0 / K) - 2.0 * R);
    };
    double prev = v_top;
    for (int j = 1; j <= 60; ++j) {
        const double v = v_top * std::pow(2.0, -0.5 * j);
        const double dm = meas(v) - meas(prev);
        if (dm > 0.0) atoms.emplace_back(prev, dm); // place mass at the upper level
        prev = v;
    }
    return atoms;
}

struct BandMassModel {
    double x_scale;        // Lebesgue measure multiplier per profile cell
    double mu_weight;      // 2^{-k gamma'}
};

BandMassModel band_mass(const VirtualFunction& f, const VirtualBand& band,
                        double gamma) {
    const double dil = f.overlap == OverlapModel::Disjoint
                           ? std::pow(2.0, -static_cast<double>(band.k))
                           : 1.0;
    return {band.multiplicity * dil, std::pow(2.0, -band.k * gamma)};
}

WeightedValueSet script_b_set(const VirtualFunction& f, const BesovParams& params,
                              bool with_tail) {
    WeightedValueSetBuilder builder;
    const auto& cells = f.profile->cells();
    const auto tails = with_tail ? tail_atoms(*f.profile)
                                 : std::vector<std::pair<double, double>>{};
    for (const VirtualBand& band : f.bands) {
        const double mag_scale =
            std::pow(2.0, band.k * params.pb_exponent()) * std::abs(band.amplitude);
        const BandMassModel m = band_mass(f, band, params.gamma);
        for (const auto& [v, meas] : cells)
            builder.add(mag_scale * v, meas * m.x_scale * m.mu_weight);
        for (const auto& [v, meas] : tails)
            builder.add(mag_scale * v, meas * m.x_scale * m.mu_weight);
    }
    return builder.build();
}

double besov_q_value(const VirtualFunction& f, const BesovParams& params,
                     bool with_tail) {
    const auto& cells = f.profile->cells();
    const auto tails = with_tail ? tail_atoms(*f.profile)
                                 : std::vector<std::pair<double, double>>{};
    std::vector<double> terms;
    for (const VirtualBand& band : f.bands) {
        const BandMassModel m = band_mass(f, band, 0.0);
        WeightedValueSetBuilder builder;
        for (const auto& [v, meas] : cells)
            builder.add(std::abs(band.amplitude) * v, meas * m.x_scale);
        for (const auto& [v, meas] : tails)
            builder.add(std::abs(band.amplitude) * v, meas * m.x_scale);
        const double band_norm =
            quasi_norm(builder.build(), LorentzParams{params.p, params.r});
        terms.push_back(std::pow(2.0, band.k * params.s) * band_norm);
    }
    if (is_inf(params.q)) {
        double best = 0.0;
        for (double t : terms) best = std::max(best, t);
        return best;
    }
    KahanSum acc;
    for (double t : terms) acc.add(std::pow(t, params.q));
    return std::pow(acc.value(), 1.0 / params.q);
}

double tl_value(const VirtualFunction& f, const BesovParams& params, bool with_tail) {
    const auto& cells = f.profile->cells();
    const auto tails = with_tail ? tail_atoms(*f.profile)
                                 : std::vector<std::pair<double, double>>{};
    WeightedValueSetBuilder builder;
    if (f.overlap == OverlapModel::SharedCenter) {
        // All bands share the envelope: the pointwise ell^q aggregate is the
        // envelope scaled by the ell^q norm of the band amplitudes.
        double agg;
        if (is_inf(params.q)) {
            agg = 0.0;
            for (const VirtualBand& band : f.bands)
                agg = std::max(agg, std::pow(2.0, band.k * params.s) *
                                        std::abs(band.amplitude));
        } else {
            KahanSum acc;
            for (const VirtualBand& band : f.bands)
                acc.add(std::pow(std::pow(2.0, band.k * params.s) *
                                     std::abs(band.amplitude),
                                 params.q));
            agg = std::pow(acc.value(), 1.0 / params.q);
        }
        for (const auto& [v, meas] : cells) builder.add(agg * v, meas);
        for (const auto& [v, meas] : tails) builder.add(agg * v, meas);
    } else {
        // Disjoint supports: the aggregate is a single band value wherever a
        // bump lives.
        for (const VirtualBand& band : f.bands) {
            const BandMassModel m = band_mass(f, band, 0.0);
            const double mag_scale =
                std::pow(2.0, band.k * params.s) * std::abs(band.amplitude);
            for (const auto& [v, meas] : cells)
                builder.add(mag_scale * v, meas * m.x_scale);
            for (const auto& [v, meas] : tails)
                builder.add(mag_scale * v, meas * m.x_scale);
        }
    }
    return quasi_norm(builder.build(), LorentzParams{params.p, params.r});
}

} // namespace

VirtualNormResult virtual_norm(const VirtualFunction& f, NormFamily family,
                               const BesovParams& params) {
    params.validate();
    if (f.profile == nullptr || f.bands.empty())
        throw validation_error("virtual_norm: empty virtual function");
    double value = 0.0, value_tail = 0.0;
    switch (family) {
        case NormFamily::ScriptB:
            value = quasi_norm(script_b_set(f, params, false),
                               LorentzParams{params.p, params.r});
            value_tail = quasi_norm(script_b_set(f, params, true),
                                    LorentzParams{params.p, params.r});
            break;
        case NormFamily::BesovQ:
            value = besov_q_value(f, params, false);
            value_tail = besov_q_value(f, params, true);
            break;
        case NormFamily::TLLorentz:
            value = tl_value(f, params, false);
            value_tail = tl_value(f, params, true);
            break;
    }
    VirtualNormResult out;
    out.report.value = value;
    out.report.family = family_name(family);
    out.report.params = params;
    out.report.k_min = f.bands.front().k;
    out.report.k_max = f.bands.back().k;
    out.report.quadrature = "virtual replication model";
    out.tail_error = std::abs(value_tail - value);
    return out;
}

SampledFunction materialize(const VirtualFunction& f, const CounterexampleSpec& spec,
                            double box, int n) {
    if (f.overlap != OverlapModel::Disjoint)
        throw validation_error("materialize: only the replicated model grids directly");
    const double width = 4.0; // twice the |eta| ~ 1 core radius
    std::vector<complexd> values(static_cast<std::size_t>(n), 0.0);
    const double dx = box / n;
    for (const VirtualBand& band : f.bands) {
        const auto count = static_cast<long>(band.multiplicity);
        const double spacing = spec.separation * std::pow(2.0, -band.k) * width;
        const double span = spacing * static_cast<double>(count - 1);
        if (span > 0.75 * box)
            throw validation_error("materialize: bumps do not fit the box; "
                                   "increase box or reduce N");
        const double first = 0.5 * box - 0.5 * span;
        const double scale = std::pow(2.0, band.k);
        for (long i = 0; i < count; ++i) {
            const double center = first + spacing * static_cast<double>(i);
            // Bump support in grid units.
            const double reach = f.profile->table_extent() / scale;
            const long lo = std::max(0L, std::lround((center - reach) / dx));
            const long hi = std::min<long>(n - 1, std::lround((center + reach) / dx));
            for (long g = lo; g <= hi; ++g) {
                const double x = g * dx;
                values[g] += band.amplitude * (*f.profile)(scale * (x - center));
            }
        }
    }
    return SampledFunction(1, box, n, std::move(values), "materialized F");
}

} // namespace besovlab
