#pragma once

#include "besovlab/besov.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// BumpProfile: a band-limited bump eta given by a smooth radial Fourier
// profile, realized as a dense table of samples (built by one inverse FFT on
// a wide auxiliary box). Records the lower bound c0 = min |eta| on |x| <= 1
// and a measured power-law tail bound |eta(x)| <= decay_constant |x|^{-decay_order}
// used by the virtual-replication error estimates. d = 1.
// ---------------------------------------------------------------------------
class BumpProfile {
public:
    /// Spectrum supported in the annulus {rho_lo <= |xi| <= rho_hi}.
    static BumpProfile from_annulus(double rho_lo, double rho_hi);
    /// Low-pass profile with spectrum in {|xi| <= rho_max}, scaled so that
    /// |eta| > 1 on |x| <= 1 (the Lemma 5.4 / 5.5 envelope).
    static BumpProfile low_pass(double rho_max);

    /// The section-5 bump: spectrum in [15/16, 17/16].
    static const BumpProfile& standard();
    /// A second, wider-annulus profile ([5/8, 3/2]) for the test family.
    static const BumpProfile& wide();
    /// The modulation envelope eta0 (spectrum in |xi| <= 2^{-5}, |eta0| > 1
    /// on |x| <= 1).
    static const BumpProfile& envelope();

    double operator()(double x) const; // real, even
    AnalyticField field() const;

    double c0() const { return c0_; }
    double peak() const { return peak_; }
    double table_extent() const { return extent_; }
    double table_step() const { return step_; }
    double decay_constant() const { return decay_constant_; }
    int decay_order() const { return decay_order_; }
    double spectrum_lo() const { return rho_lo_; }
    double spectrum_hi() const { return rho_hi_; }

    /// Distribution data of |eta| on the real line: (value, Lebesgue measure)
    /// per table cell, both signs of x merged.
    const std::vector<std::pair<double, double>>& cells() const { return cells_; }

private:
    BumpProfile() = default;
    void finalize();

    std::vector<double> table_; // eta on [0, extent], step `step_`
    double step_ = 0.0;
    double extent_ = 0.0;
    double c0_ = 0.0;
    double peak_ = 0.0;
    double decay_constant_ = 0.0;
    int decay_order_ = 6;
    double rho_lo_ = 0.0;
    double rho_hi_ = 0.0;
    std::vector<std::pair<double, double>> cells_;
};

// ---------------------------------------------------------------------------
// Virtual band families. A band k holds L_k F = c_k * (bump sum); under the
// separation policy the within-band bumps have disjoint supports, so every
// Littlewood-Paley-side norm depends only on the distribution function of a
// single bump replicated multiplicity-many times. The SharedCenter overlap
// model covers the modulated examples f_k = c_k eta0(x) e^{i 2^k x}, where
// all bands share one envelope.
// ---------------------------------------------------------------------------
struct VirtualBand {
    int k = 0;
    double amplitude = 1.0;    // c_k
    double multiplicity = 1.0; // N_gamma(k), exact floor
};

enum class OverlapModel {
    Disjoint,     // band k bump is eta(2^k (x - c)), replicated
    SharedCenter, // all bands share the undilated envelope
};

struct VirtualFunction {
    const BumpProfile* profile = nullptr;
    OverlapModel overlap = OverlapModel::Disjoint;
    std::vector<VirtualBand> bands;
};

struct CounterexampleSpec {
    double gamma = 0.5;
    double s = 0.5;
    double p = 2.0;
    int N = 2;
    int separation = 16;               // centers S * 2^{-k} * width apart
    double multiplicity_cap = 1.0e12;  // abort above this
    bool gamma_below_minus_d() const { return gamma < -1.0; } // d = 1
};

/// F_{gamma,N}: bands k in (N, 2N] for gamma >= -d, k in (-2N, -N] otherwise,
/// with c_k = 2^{-k(s + gamma/p)} and multiplicity floor(2^{k(1+gamma)}).
/// Throws when a multiplicity exceeds the configured cap (reduce N or gamma).
VirtualFunction build_F(const CounterexampleSpec& spec,
                        const BumpProfile& profile = BumpProfile::standard());

/// The renormalized dilation 2^{m(d/p - s)} F(2^m .) on the virtual
/// representation: bands shift by m, amplitudes pick up the exact factor.
VirtualFunction dilate_virtual(const VirtualFunction& f, int m, double s, double p);

enum class LogExampleVariant {
    DivergentWeak, // c_k proportional to (log k) / k^{1/p}   (not in scriptB(0,inf))
    SummableOne,   // c_k proportional to 1 / (k^{1/p} log^2 k) (in scriptB(0,1))
};

/// Partial sums (k <= K) of the modulated log examples; SharedCenter model.
VirtualFunction build_log_example(double s, double p, LogExampleVariant variant, int K);

struct VirtualNormResult {
    NormReport report;
    double tail_error = 0.0; // effect of the measured profile tail bound
};

/// Any Fourier-side family evaluated on the virtual representation.
VirtualNormResult virtual_norm(const VirtualFunction& f, NormFamily family,
                               const BesovParams& params);

/// Lay the replicated bumps out on a concrete periodic grid (small N only);
/// the spec's separation policy fixes the center spacing.
SampledFunction materialize(const VirtualFunction& f, const CounterexampleSpec& spec,
                            double box, int n);

} // namespace besovlab
