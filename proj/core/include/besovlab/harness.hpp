#pragma once

#include <map>

#include "besovlab/counterexamples.hpp"
#include "besovlab/differences.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// ExperimentPlan: tag + key/value parameter grid + seed + output path, read
// from a simple key=value config file. Reports echo the full plan and the
// build version so every run is reproducible from (plan, seed).
// ---------------------------------------------------------------------------
struct ExperimentPlan {
    std::string tag;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::string output_path;

    double get(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;

    static ExperimentPlan from_config_file(const std::string& path);
    std::string echo() const;
};

/// "# besovlab <version> (<git>)\n# plan: ..." header for CSV reports.
std::string report_header(const ExperimentPlan& plan);

// ---------------------------------------------------------------------------
// The standard function family: a versioned manifest of 30 entries built from
// two band-limited bump profiles under dilation, translation and modulation,
// so equivalence brackets are comparable across runs.
// ---------------------------------------------------------------------------
struct FamilyEntry {
    int profile = 0;        // 0 = standard annulus bump, 1 = wide annulus bump
    int dilation = 0;       // P(2^m x)
    double translation = 0; // fraction of the box
    bool modulated = false; // e^{i 2^{k_mod} x}, k_mod = 3
    std::string name() const;
};

std::vector<FamilyEntry> standard_family();

struct FamilyFunction {
    FamilyEntry entry;
    AnalyticField field;  // off-grid evaluation (difference side)
    SampledFunction samples = SampledFunction::zero(1, 1.0, 1); // Fourier side
};

FamilyFunction realize(const FamilyEntry& entry, double box, int n);

// ---------------------------------------------------------------------------
// Equivalence brackets: empirical [c1, c2] for the ratio
// difference-quasi-norm / Fourier-quasi-norm over the family.
// ---------------------------------------------------------------------------
struct EquivalencePoint {
    int M = 1;
    double s = 0.5, p = 2.0, r = 2.0, gamma = 1.0;
};

/// M in {1,2}, s in {0.3,0.5,0.7}, p in {1.5,2,3}, r in {1,p,inf},
/// gamma in {-2,0.5,1} (gamma = d coincides with 1 for d = 1).
std::vector<EquivalencePoint> acceptance_equivalence_grid();

struct BracketRow {
    EquivalencePoint point;
    double c_lo = kInf;
    double c_hi = 0.0;
    std::string argmin, argmax;
    double dynamic_range() const { return c_lo > 0.0 ? c_hi / c_lo : kInf; }
};

struct EquivalenceOptions {
    double box = 128.0;
    int n = 8192;
    BandRange bands{-4, 4};
    int shell_min = -12;
    int shell_max = 5;
    int refine = 1; // node refinement factor (mesh-doubling checks)
    std::vector<std::size_t> family_subset; // empty = all 30
};

std::vector<BracketRow> equivalence_bracket(const EquivalenceOptions& opts);

// ---------------------------------------------------------------------------
// Embedding sweep for the four directed inclusions (both Besov-Lorentz
// orderings, both Triebel-Lizorkin orderings at gamma != 0), reported as one
// empirical constant (max ratio) per direction over the family.
// ---------------------------------------------------------------------------
struct EmbeddingRow {
    double s = 0.5, p = 2.0, r = 2.0, gamma = 1.0;
    std::string direction; // e.g. "scriptB->besovLorentz"
    double max_ratio = 0.0;
    std::string argmax;
};

struct EmbeddingOptions {
    double box = 128.0;
    int n = 8192;
    BandRange bands{-4, 4};
    double s = 0.5;
    std::vector<double> ps{1.5, 2.0, 3.0};
    std::vector<double> rs{1.0, 2.0, 4.0, kInf};
    std::vector<double> gammas{-2.0, 0.5, 1.0};
};

std::vector<EmbeddingRow> embedding_sweep(const EmbeddingOptions& opts);

/// r = p collapse: max relative spread between scriptB, Besov-Lorentz and
/// TL-Lorentz values at q = r = p over the family.
double fubini_collapse_spread(const EmbeddingOptions& opts, double p, double gamma);

// ---------------------------------------------------------------------------
// Slope fitting on log2-log2 data.
// ---------------------------------------------------------------------------
struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
};

/// Least squares on (log2 N, log2 value); throws when underdetermined
/// (fewer than two points) or when a value is non-positive.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& n_value);

// ---------------------------------------------------------------------------
// Counterexample growth tables (shared by the CLI and the acceptance suite).
// ---------------------------------------------------------------------------
struct GrowthRow {
    int N = 0;
    std::string family_label;
    double value = 0.0;
    double tail_error = 0.0;
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
    std::map<std::string, SlopeFit> slopes;           // per family label
    std::map<std::string, double> target_slopes;      // expected log2 slope
};

/// Norm growth of F_{gamma,N} over N in [N_lo, N_hi] in three families:
/// scriptB(gamma, inf) [target 1/p], scriptB(beta, r) with beta != gamma and
/// dot-B^s_{p,r} [targets 1/r].
GrowthTable counterexample_growth(double gamma, double s, double p, double r,
                                  double beta, int N_lo, int N_hi);

/// Random function with spectrum supported in [2^{k_lo}, 2^{k_hi}] (inside the
/// region where the dyadic partition of unity sums to one), d = 1.
SampledFunction random_band_limited(double box, int n, int k_lo, int k_hi,
                                    std::uint64_t seed);

} // namespace besovlab
