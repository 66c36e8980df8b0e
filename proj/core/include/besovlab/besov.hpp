#pragma once

#include <map>

#include "besovlab/littlewood_paley.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// BesovParams: the full parameter tuple shared by the Fourier-side norms.
//   s   smoothness, p primary integrability (1 < p < inf),
//   r   Lorentz secondary index in [1, inf],
//   q   dyadic aggregation index in [1, inf] (Besov/Triebel-Lizorkin scales),
//   gamma weight exponent of mu_gamma, homogeneous selects L_k vs the
//   inhomogeneous blocks.
// ---------------------------------------------------------------------------
struct BesovParams {
    double s = 0.5;
    double p = 2.0;
    double r = 2.0;
    double q = 2.0;
    double gamma = 0.0;
    bool homogeneous = true;
    void validate() const;
    double pb_exponent() const { return s + gamma / p; }
};

struct BandRange {
    int k_min = -6;
    int k_max = 5;
};

/// Norm families computed by this module.
enum class NormFamily {
    ScriptB,   // Lorentz-type: [P^{s+gamma/p} f]_{L^{p,r}(mu_gamma)}
    BesovQ,    // Besov-Lorentz: (sum_k 2^{ksq} [L_k f]_{L^{p,r}}^q)^{1/q}
    TLLorentz, // Triebel-Lizorkin-Lorentz: [(sum_k 2^{ksq} |L_k f|^q)^{1/q}]_{L^{p,r}}
};

std::string family_name(NormFamily family);

// ---------------------------------------------------------------------------
// NormReport: a computed quasi-norm with full parameter and discretization
// provenance. Serializes to JSON with stable field names
// (value, family, s, p, r, q, gamma, n, L, kmin, kmax, seed).
// ---------------------------------------------------------------------------
struct NormReport {
    double value = 0.0;
    std::string family;
    BesovParams params;
    int grid_n = 0;
    double box = 0.0;
    int k_min = 0;
    int k_max = 0;
    std::string quadrature; // discretization notes beyond the lattice
    std::uint64_t seed = 0;

    std::string to_json() const;
};

NormReport script_b_norm(const SampledFunction& f, const BesovParams& params,
                         const BandRange& bands, std::uint64_t seed = 0);
NormReport besov_pq_norm(const SampledFunction& f, const BesovParams& params,
                         const BandRange& bands, std::uint64_t seed = 0);
NormReport tl_lorentz_norm(const SampledFunction& f, const BesovParams& params,
                           const BandRange& bands, std::uint64_t seed = 0);

NormReport compute_norm(NormFamily family, const SampledFunction& f,
                        const BesovParams& params, const BandRange& bands,
                        std::uint64_t seed = 0);

/// Widest homogeneous band range the lattice supports, ending at the Nyquist
/// limit; `span` bands total.
BandRange default_band_range(const SampledFunction& f, int span = 12);

// ---------------------------------------------------------------------------
// BandField: Fourier-side data F(x, k) held per band, the domain of the
// retraction operator R_b and the image of the coretraction P^b.
// ---------------------------------------------------------------------------
struct BandField {
    std::map<int, SampledFunction> bands;
    int dim() const;
    double box() const;
    int n() const;
};

/// P^b f as banded data: band k holds 2^{kb} L_k f.
BandField pb_apply(const SampledFunction& f, const LPFamily& family, double b);

} // namespace besovlab
