#pragma once

#include "besovlab/grid.hpp"
#include "besovlab/lorentz.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// LPFamily: the radial dyadic multiplier phi with
//   supp phi subset {3/4 < |xi| < 7/4},  phi = 1 on 7/8 <= |xi| <= 9/8,
//   sum_k phi(2^{-k} xi) = 1 for xi != 0,
// built by telescoping a smooth cutoff, phi(xi) = psi0(|xi|) - psi0(2|xi|)
// with psi0 = 1 on [0, 3/2] and supp psi0 subset [0, 7/4). The companion
// phi_tilde has supp in {1/2 < |xi| < 2} and equals 1 on supp phi, so that
// phi_tilde * phi = phi. psi0 itself is the multiplier of the inhomogeneous
// block L0 = Id - sum_{k>0} L_k.
// ---------------------------------------------------------------------------
class LPFamily {
public:
    LPFamily(int k_min, int k_max);

    int k_min() const { return k_min_; }
    int k_max() const { return k_max_; }

    double phi(double rho) const;        // radial profile
    double phi_tilde(double rho) const;  // companion profile
    double psi0(double rho) const;       // smooth cutoff, = inhomogeneous block 0

    double phi_at(const Point& xi, int dim) const; // phi(|xi|)
    /// Evenly tabulated phi on [0, rho_max], for plots and sanity checks.
    std::vector<double> phi_table(int samples, double rho_max = 2.0) const;

private:
    int k_min_;
    int k_max_;
};

/// Largest band k such that the support of phi(2^{-k} .) (or phi_tilde for
/// `tilde`) stays strictly below the lattice Nyquist frequency pi n / L.
int max_representable_band(const Spectrum& s, bool tilde = false);
void require_band_fits(const Spectrum& s, int k, bool tilde = false);

enum class LPKind {
    Homogeneous,      // L_k, multiplier phi(2^{-k} xi)
    HomogeneousTilde, // L~_k, multiplier phi_tilde(2^{-k} xi)
    Inhomogeneous     // L/_k: k > 0 as L_k, block k = 0 has multiplier psi0(|xi|)
};

/// Apply a Littlewood-Paley multiplier to a spectrum (bandwise, linear).
Spectrum lp_project(const Spectrum& s, const LPFamily& family, int k,
                    LPKind kind = LPKind::Homogeneous);
SampledFunction lp_project(const SampledFunction& f, const LPFamily& family, int k,
                           LPKind kind = LPKind::Homogeneous);

// ---------------------------------------------------------------------------
// MuGammaSamples: pushforward of P^b f(x,k) = 2^{kb} L_k f(x) under the
// weighted measure mu_gamma; one (magnitude, mass) pair per retained lattice
// point and band, mass 2^{-k gamma} (L/n)^d.
// ---------------------------------------------------------------------------
struct MuGammaSamples {
    WeightedValueSet set;
    double gamma = 0.0;
    double b = 0.0;
    int k_min = 0;
    int k_max = 0;
    bool inhomogeneous = false;
    int dim = 1;
    int grid_n = 0;
    double box = 0.0;
    double mass_per_point(int k) const; // 2^{-k gamma} (L/n)^d
};

MuGammaSamples pb_samples(const SampledFunction& f, const LPFamily& family,
                          double b, double gamma, bool inhomogeneous = false);

/// Per-band projections as sampled functions (k from family range; for the
/// inhomogeneous variant bands run over 0..k_max).
std::vector<SampledFunction> lp_bands(const SampledFunction& f, const LPFamily& family,
                                      bool inhomogeneous = false);

} // namespace besovlab
