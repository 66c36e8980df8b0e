#pragma once

#include "besovlab/grid.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// WaveletBasis: compactly supported orthonormal (Daubechies) filter pair with
// u vanishing moments, u in {2,...,6}, periodized on the working box. The
// scaling/wavelet functions are evaluable off-grid through dyadic refinement
// tables (exact two-scale recursion, interpolated between dyadic points).
// ---------------------------------------------------------------------------
class WaveletBasis {
public:
    explicit WaveletBasis(int vanishing_moments);

    int vanishing_moments() const { return u_; }
    int filter_length() const { return static_cast<int>(lowpass_.size()); }
    const std::vector<double>& lowpass() const { return lowpass_; }
    const std::vector<double>& highpass() const { return highpass_; }

    /// Scaling function, support [0, filter_length - 1].
    double phi_value(double x) const;
    /// Wavelet, support [(2 - filter_length)/2, filter_length/2].
    double psi_value(double x) const;
    double psi_support_lo() const;
    double psi_support_hi() const;

private:
    int u_;
    std::vector<double> lowpass_;
    std::vector<double> highpass_;
    std::vector<double> phi_table_; // resolution 2^-kCascadeDepth on the support
    int table_depth_ = 12;
};

// ---------------------------------------------------------------------------
// WaveletCoeffTree: periodized wavelet coefficients of a sampled function.
// Entry (e, j, m): e = 0 is the coarsest scaling block, e >= 1 a detail
// orientation (d = 1 has one, d = 2 has three); j is the box-relative dyadic
// level with 2^j positions per axis. Coefficients are normalized so that
// sum |c|^2 equals the Riemann L^2 norm squared of the function.
// ---------------------------------------------------------------------------
struct WaveletEntry {
    int e = 1;
    int level = 0;
    long m = 0;
    complexd c;
};

class WaveletCoeffTree {
public:
    WaveletCoeffTree() = default;
    WaveletCoeffTree(int dim, double box, int n, int level0, int vanishing_moments);

    int dim() const { return dim_; }
    double box() const { return box_; }
    int n() const { return n_; }
    int level0() const { return level0_; }
    int finest_level() const; // log2(n)
    int vanishing_moments() const { return u_; }

    std::vector<WaveletEntry>& entries() { return entries_; }
    const std::vector<WaveletEntry>& entries() const { return entries_; }
    std::size_t nonzero_count(double tol = 0.0) const;

    /// |c| 2^{j d (1/2 - 1/q)} with j taken relative to the physical box
    /// scale; the greedy selection key (the L^q size of c psi_{j,m}).
    double q_weight(const WaveletEntry& entry, double q) const;

    std::string to_json() const;
    static WaveletCoeffTree from_json(const std::string& text);

private:
    int dim_ = 1;
    double box_ = 1.0;
    int n_ = 0;
    int level0_ = 0;
    int u_ = 3;
    std::vector<WaveletEntry> entries_;
};

/// Periodized analysis down to `level0`; synthesize(analyze(f)) = f to
/// round-off. Throws on a level range the grid cannot hold.
WaveletCoeffTree analyze(const SampledFunction& f, const WaveletBasis& basis,
                         int level0);
SampledFunction synthesize(const WaveletCoeffTree& tree, const WaveletBasis& basis);

/// Grid L^q norm ((L/n)^d sum |g|^q)^{1/q}.
double grid_lq_norm(const SampledFunction& g, double q);

/// Greedy upper bound for the best n-term approximation error sigma_n(f)_q:
/// keep the n entries of largest q-weight, measure the L^q remainder on the
/// grid. Nonincreasing in n; sigma_0 = ||f||_q.
double greedy_sigma_n(const WaveletCoeffTree& tree, const WaveletBasis& basis,
                      double q, std::size_t n);

/// sigma_n for n = 0..n_max in one pass.
std::vector<double> greedy_sigma_table(const WaveletCoeffTree& tree,
                                       const WaveletBasis& basis, double q,
                                       std::size_t n_max);

struct ApproxSpaceNorm {
    double value = 0.0;
    std::size_t n_max = 0;
};

/// ||f||_{A^alpha_r(L^q)} over n in [1, n_max]: sup_n n^alpha sigma_n for
/// r = inf, otherwise (sum [n^alpha sigma_n]^r / n)^{1/r}.
ApproxSpaceNorm approx_space_norm(const WaveletCoeffTree& tree, const WaveletBasis& basis,
                                  double q, double alpha, double r, std::size_t n_max);

/// The wavelet sum as an off-grid evaluable field (cascade tables), for the
/// difference-operator side of the approximation-space comparisons.
AnalyticField wavelet_sum_field(const WaveletCoeffTree& tree, const WaveletBasis& basis);

struct ComparisonReport {
    double lhs = 0.0; // sup_n n^alpha sigma_n(f)_q
    double rhs = 0.0; // weak difference quasi-norm, gamma = -d reparametrization
    double ratio() const { return rhs == 0.0 ? (lhs == 0.0 ? 1.0 : kInf) : lhs / rhs; }
};

/// sup_n n^alpha sigma_n(f)_q against the weak nu_{-d} difference norm with
/// 1/p = 1/q + alpha and b = -d/q; requires 0 < alpha < 1 - 1/q and M > alpha d.
ComparisonReport approximation_vs_difference(const WaveletCoeffTree& tree,
                                             const WaveletBasis& basis, double q,
                                             double alpha, int M, std::size_t n_max);

/// Random coefficient tree whose q-weighted magnitudes follow the weak-l^tau
/// profile k^{-1/tau}: `count` detail coefficients at seeded positions across
/// levels [level_lo, level_hi], signs seeded, interior placement (margin away
/// from the box boundary so periodization is immaterial).
WaveletCoeffTree prescribed_decay_tree(double box, int n, int level0,
                                       const WaveletBasis& basis, int level_lo,
                                       int level_hi, int count, double tau, double q,
                                       std::uint64_t seed);

} // namespace besovlab
