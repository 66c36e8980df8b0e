#include "besovlab/besov.hpp"

#include <json.hpp>

namespace besovlab {

void BesovParams::validate() const {
    LorentzParams{p, r}.validate();
    if (!(q >= 1.0)) throw validation_error("BesovParams: need 1 <= q <= inf");
    if (!std::isfinite(s)) throw validation_error("BesovParams: s must be finite");
    if (!std::isfinite(gamma)) throw validation_error("BesovParams: gamma must be finite");
}

std::string family_name(NormFamily family) {
    switch (family) {
        case NormFamily::ScriptB: return "scriptB";
        case NormFamily::BesovQ: return "besovQ";
        case NormFamily::TLLorentz: return "tlLorentz";
    }
    return "unknown";
}

std::string NormReport::to_json() const {
    nlohmann::ordered_json j;
    auto num = [](double x) -> nlohmann::ordered_json {
        if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
        return x;
    };
    j["value"] = value;
    j["family"] = family;
    j["s"] = params.s;
    j["p"] = params.p;
    j["r"] = num(params.r);
    j["q"] = num(params.q);
    j["gamma"] = params.gamma;
    j["homogeneous"] = params.homogeneous;
    j["n"] = grid_n;
    j["L"] = box;
    j["kmin"] = k_min;
    j["kmax"] = k_max;
    if (!quadrature.empty()) j["quadrature"] = quadrature;
    j["seed"] = seed;
    return j.dump();
}

namespace {

NormReport make_report(NormFamily family, double value, const BesovParams& params,
                       const SampledFunction& f, const BandRange& bands,
                       std::uint64_t seed) {
    if (!std::isfinite(value)) throw validation_error("norm value is not finite");
    NormReport report;
    report.value = value;
    report.family = family_name(family);
    report.params = params;
    report.grid_n = f.n();
    report.box = f.box();
    report.k_min = params.homogeneous ? bands.k_min : 0;
    report.k_max = bands.k_max;
    report.seed = seed;
    return report;
}

double ell_q(const std::vector<double>& values, double q) {
    if (is_inf(q)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }
    KahanSum s;
    for (double v : values) s.add(std::pow(v, q));
    return std::pow(s.value(), 1.0 / q);
}

} // namespace

BandRange default_band_range(const SampledFunction& f, int span) {
    const Spectrum spec = to_spectrum(f);
    BandRange out;
    out.k_max = max_representable_band(spec);
    out.k_min = out.k_max - span + 1;
    return out;
}

NormReport script_b_norm(const SampledFunction& f, const BesovParams& params,
                         const BandRange& bands, std::uint64_t seed) {
    params.validate();
    const LPFamily family(bands.k_min, bands.k_max);
    const MuGammaSamples samples =
        pb_samples(f, family, params.pb_exponent(), params.gamma, !params.homogeneous);
    const double value = quasi_norm(samples.set, LorentzParams{params.p, params.r});
    return make_report(NormFamily::ScriptB, value, params, f, bands, seed);
}

NormReport besov_pq_norm(const SampledFunction& f, const BesovParams& params,
                         const BandRange& bands, std::uint64_t seed) {
    params.validate();
    const LPFamily family(bands.k_min, bands.k_max);
    const std::vector<SampledFunction> per_band =
        lp_bands(f, family, !params.homogeneous);
    const double cell = f.cell_volume();
    const int k0 = params.homogeneous ? bands.k_min : 0;
    std::vector<double> terms;
    terms.reserve(per_band.size());
    for (std::size_t i = 0; i < per_band.size(); ++i) {
        const int k = k0 + static_cast<int>(i);
        WeightedValueSetBuilder builder;
        builder.reserve(per_band[i].size());
        for (const complexd& v : per_band[i].values()) builder.add(std::abs(v), cell);
        const double band_norm =
            quasi_norm(builder.build(), LorentzParams{params.p, params.r});
        terms.push_back(std::pow(2.0, k * params.s) * band_norm);
    }
    return make_report(NormFamily::BesovQ, ell_q(terms, params.q), params, f, bands, seed);
}

NormReport tl_lorentz_norm(const SampledFunction& f, const BesovParams& params,
                           const BandRange& bands, std::uint64_t seed) {
    params.validate();
    const LPFamily family(bands.k_min, bands.k_max);
    const std::vector<SampledFunction> per_band =
        lp_bands(f, family, !params.homogeneous);
    const double cell = f.cell_volume();
    const int k0 = params.homogeneous ? bands.k_min : 0;
    const std::size_t points = f.size();
    std::vector<double> aggregate(points, 0.0);
    if (is_inf(params.q)) {
        for (std::size_t i = 0; i < per_band.size(); ++i) {
            const double w = std::pow(2.0, (k0 + static_cast<int>(i)) * params.s);
            for (std::size_t x = 0; x < points; ++x)
                aggregate[x] = std::max(aggregate[x], w * std::abs(per_band[i][x]));
        }
    } else {
        for (std::size_t i = 0; i < per_band.size(); ++i) {
            const double w = std::pow(2.0, (k0 + static_cast<int>(i)) * params.s);
            for (std::size_t x = 0; x < points; ++x)
                aggregate[x] += std::pow(w * std::abs(per_band[i][x]), params.q);
        }
        for (double& a : aggregate) a = std::pow(a, 1.0 / params.q);
    }
    WeightedValueSetBuilder builder;
    builder.reserve(points);
    for (double a : aggregate) builder.add(a, cell);
    const double value = quasi_norm(builder.build(), LorentzParams{params.p, params.r});
    return make_report(NormFamily::TLLorentz, value, params, f, bands, seed);
}

NormReport compute_norm(NormFamily family, const SampledFunction& f,
                        const BesovParams& params, const BandRange& bands,
                        std::uint64_t seed) {
    switch (family) {
        case NormFamily::ScriptB: return script_b_norm(f, params, bands, seed);
        case NormFamily::BesovQ: return besov_pq_norm(f, params, bands, seed);
        case NormFamily::TLLorentz: return tl_lorentz_norm(f, params, bands, seed);
    }
    throw validation_error("compute_norm: unknown family");
}

int BandField::dim() const {
    if (bands.empty()) throw validation_error("BandField: empty");
    return bands.begin()->second.dim();
}

double BandField::box() const {
    if (bands.empty()) throw validation_error("BandField: empty");
    return bands.begin()->second.box();
}

int BandField::n() const {
    if (bands.empty()) throw validation_error("BandField: empty");
    return bands.begin()->second.n();
}

BandField pb_apply(const SampledFunction& f, const LPFamily& family, double b) {
    const Spectrum spec = to_spectrum(f);
    BandField out;
    for (int k = family.k_min(); k <= family.k_max(); ++k) {
        SampledFunction band = to_samples(lp_project(spec, family, k));
        const double amplitude = std::pow(2.0, k * b);
        for (complexd& v : band.values()) v *= amplitude;
        out.bands.emplace(k, std::move(band));
    }
    return out;
}

} // namespace besovlab
