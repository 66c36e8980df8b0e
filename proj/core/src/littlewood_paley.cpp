#include "besovlab/littlewood_paley.hpp"

namespace besovlab {

namespace {

// e^{-1/t} mollified step: smooth, 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

} // namespace

LPFamily::LPFamily(int k_min, int k_max) : k_min_(k_min), k_max_(k_max) {
    if (k_min > k_max) throw validation_error("LPFamily: k_min must be <= k_max");
}

double LPFamily::psi0(double rho) const {
    // 1 on [0, 3/2], 0 from 7/4 on, smooth transition in between.
    return 1.0 - smooth_step((rho - 1.5) * 4.0);
}

double LPFamily::phi(double rho) const { return psi0(rho) - psi0(2.0 * rho); }

double LPFamily::phi_tilde(double rho) const {
    // Rises on [1/2, 3/4], plateau 1 through [3/4, 7/4], falls on [7/4, 2].
    return smooth_step((rho - 0.5) * 4.0) * (1.0 - smooth_step((rho - 1.75) * 4.0));
}

double LPFamily::phi_at(const Point& xi, int dim) const {
    const double rho = dim == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
    return phi(rho);
}

std::vector<double> LPFamily::phi_table(int samples, double rho_max) const {
    if (samples < 2) throw validation_error("phi_table: need at least 2 samples");
    std::vector<double> table(samples);
    for (int i = 0; i < samples; ++i)
        table[i] = phi(rho_max * i / (samples - 1.0));
    return table;
}

int max_representable_band(const Spectrum& s, bool tilde) {
    const double mult_radius = tilde ? 2.0 : 1.75;
    int k = -64;
    while (std::ldexp(mult_radius, k + 1) < s.nyquist()) ++k;
    return k;
}

void require_band_fits(const Spectrum& s, int k, bool tilde) {
    const double mult_radius = tilde ? 2.0 : 1.75;
    if (!(std::ldexp(mult_radius, k) < s.nyquist()))
        throw band_out_of_range("band k=" + std::to_string(k) +
                                " exceeds the lattice Nyquist frequency");
}

Spectrum lp_project(const Spectrum& s, const LPFamily& family, int k, LPKind kind) {
    if (kind == LPKind::Inhomogeneous && k < 0)
        throw validation_error("lp_project: inhomogeneous bands have k >= 0");
    const bool block0 = (kind == LPKind::Inhomogeneous && k == 0);
    require_band_fits(s, block0 ? 0 : k, kind == LPKind::HomogeneousTilde);
    std::vector<complexd> coeffs(s.coeffs().begin(), s.coeffs().end());
    const double scale = std::ldexp(1.0, -k);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double rho = s.frequency_radius(i);
        double m;
        switch (kind) {
            case LPKind::HomogeneousTilde: m = family.phi_tilde(scale * rho); break;
            case LPKind::Inhomogeneous:
                m = block0 ? family.psi0(rho) : family.phi(scale * rho);
                break;
            default: m = family.phi(scale * rho); break;
        }
        coeffs[i] *= m;
    }
    return Spectrum(s.dim(), s.box(), s.n(), std::move(coeffs), s.label());
}

SampledFunction lp_project(const SampledFunction& f, const LPFamily& family, int k,
                           LPKind kind) {
    return to_samples(lp_project(to_spectrum(f), family, k, kind));
}

double MuGammaSamples::mass_per_point(int k) const {
    const double h = box / grid_n;
    const double cell = dim == 1 ? h : h * h;
    return std::pow(2.0, -static_cast<double>(k) * gamma) * cell;
}

std::vector<SampledFunction> lp_bands(const SampledFunction& f, const LPFamily& family,
                                      bool inhomogeneous) {
    const Spectrum spec = to_spectrum(f);
    std::vector<SampledFunction> bands;
    const int k0 = inhomogeneous ? 0 : family.k_min();
    for (int k = k0; k <= family.k_max(); ++k) {
        bands.push_back(to_samples(lp_project(
            spec, family, k, inhomogeneous ? LPKind::Inhomogeneous : LPKind::Homogeneous)));
    }
    return bands;
}

MuGammaSamples pb_samples(const SampledFunction& f, const LPFamily& family, double b,
                          double gamma, bool inhomogeneous) {
    const Spectrum spec = to_spectrum(f);
    const int k0 = inhomogeneous ? 0 : family.k_min();
    const int k1 = family.k_max();
    require_band_fits(spec, k1);

    MuGammaSamples out;
    out.gamma = gamma;
    out.b = b;
    out.k_min = k0;
    out.k_max = k1;
    out.inhomogeneous = inhomogeneous;
    out.dim = f.dim();
    out.grid_n = f.n();
    out.box = f.box();

    const double cell = f.cell_volume();
    WeightedValueSetBuilder builder;
    builder.reserve(f.size() * static_cast<std::size_t>(k1 - k0 + 1));
    for (int k = k0; k <= k1; ++k) {
        const SampledFunction band = to_samples(lp_project(
            spec, family, k, inhomogeneous ? LPKind::Inhomogeneous : LPKind::Homogeneous));
        const double amplitude = std::pow(2.0, static_cast<double>(k) * b);
        const double mass = std::pow(2.0, -static_cast<double>(k) * gamma) * cell;
        for (const complexd& v : band.values())
            builder.add(amplitude * std::abs(v), mass);
    }
    out.set = builder.build();
    return out;
}

} // namespace besovlab
