#pragma once

#include "besovlab/besov.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// NuGammaQuadrature: discretization of nu_gamma(E) = iint_E dx dh / |h|^{d-gamma}
// by dyadic h-shells (Gauss-Legendre in radius, equispaced angles for d = 2)
// and an x-lattice (or seeded Monte-Carlo cloud for d = 2). The radial weight
// is scale-homogeneous, so reference nodes on [1, 2] serve every shell.
// ---------------------------------------------------------------------------
struct NuGammaQuadrature {
    int dim = 1;
    double gamma = 1.0;
    int shell_min = -12; // shell j covers |h| in [2^j, 2^{j+1}]
    int shell_max = 5;
    int radial_order = 8;
    int angular_count = 16; // d = 2 only

    enum class XKind { Lattice, MonteCarlo };
    XKind x_kind = XKind::Lattice;
    double x_center = 0.0;
    double x_half_width = 16.0;   // window [center - w, center + w] per axis
    double x_spacing = 1.0 / 16.0;
    std::size_t mc_count = 0;
    std::uint64_t seed = 0;
    bool restrict_x_per_shell = true;  // clip x window to supp(f) + M|h|
    double support_radius_hint = -1.0; // radius about x_center; -1 = use field's

    void validate() const;
    std::string to_json() const;
    static NuGammaQuadrature from_json(const std::string& text);

    /// Shells and x-window sized for the field's support hint and order M.
    static NuGammaQuadrature auto_for(const AnalyticField& f, double gamma, int M,
                                      int shell_min = -12, int shell_max = 5);

    /// The same truncation with `factor`-times finer nodes in every direction,
    /// for mesh-convergence checks.
    NuGammaQuadrature refined(int factor) const;
};

struct HNode {
    Point h;
    double weight; // quadrature weight for dh / |h|^{d-gamma}
    double radius;
};

std::vector<HNode> h_nodes(const NuGammaQuadrature& q);

// ---------------------------------------------------------------------------
// DifferenceField: (x, h) -> Delta_h^M f(x) / |h|^b. For M = 1 and b = s + d/p
// this coincides after y = x + h with the two-point difference quotient
// (f(x) - f(y)) / |x - y|^b on R^{2d}.
// ---------------------------------------------------------------------------
struct DifferenceField {
    AnalyticField f;
    int order = 1;   // M >= 1
    double exponent = 0.0; // b
    complexd operator()(const Point& x, const Point& h) const;
};

/// Pushforward of |Q_{M,b} f| under the quadrature; the expensive part of
/// difference_quasi_norm, exposed separately so several (p, r) evaluations can
/// share one node sweep.
WeightedValueSet difference_pushforward(const AnalyticField& f, int M, double b,
                                        const NuGammaQuadrature& q);

/// || Q_{M,b} f ||_{L^{p,r}(nu_gamma)} with b = s + gamma/p. Warns (in the
/// report) when b - gamma/p lies outside (0, M).
NormReport difference_quasi_norm(const AnalyticField& f, int M, double b, double gamma,
                                 double p, double r, const NuGammaQuadrature& q);

/// Brezis-Van Schaftingen-Yung diagonal form [D_b f]_{L^{p,inf}(R^{2d})},
/// computed from the two-point quotient (f(x)-f(y))/|x-y|^b on the same node
/// geometry; requires q.gamma == dim.
NormReport bsy_diagonal_norm(const AnalyticField& f, double b, double p,
                             const NuGammaQuadrature& q);

/// Retraction R_b F = sum_k 2^{-kb} L~_k F_k; together with P^b (pb_apply)
/// this is the identity on band-limited data.
SampledFunction rb_apply(const BandField& F, double b, const LPFamily& family);

// ---------------------------------------------------------------------------
// Mollifier pair for the A_{b,eps} retraction: phi smooth, supported in
// B_{1/2}, phi integrating to 1, and psi(y) = -phi(y) d - <y, grad phi(y)>,
// which integrates to 0 and satisfies psi_t = t d/dt phi_t.
// ---------------------------------------------------------------------------
struct Mollifier {
    double normalization = 1.0;
    double phi(double y) const;
    double dphi(double y) const;
    double psi(double y) const;
    static const Mollifier& standard();
};

using DifferenceKernelData = std::function<complexd(double y, double h)>;

/// F as node data for A_{b,eps}: the difference kernel of f.
DifferenceKernelData difference_kernel_data(const AnalyticField& f, int M, double b);

struct ABEpsilonOptions {
    int t_panels_per_log_unit = 3; // Gauss-Legendre panels per unit of log t
    int t_order = 8;
    int yh_order = 20;
    bool check_refinement = false; // compare against a coarser rule, flag > 1%
};

/// A_{b,eps} F(x) = int_eps^{1/eps} iint F(y,h) |h|^b phi_t(x-y-h) psi_t(x-y)
/// dh dy dt/t, evaluated lazily (d = 1).
AnalyticField a_b_epsilon_apply(const DifferenceKernelData& F, double b, double eps,
                                const Mollifier& moll = Mollifier::standard(),
                                const ABEpsilonOptions& opts = {});

/// phi_eps * f - phi_{1/eps} * f, the closed-form limit of A_{b,eps} Q_{1,b} f
/// for smooth compactly supported f.
complexd mollified_band_difference(const AnalyticField& f, double eps, double x,
                                   const Mollifier& moll = Mollifier::standard(),
                                   int order = 64);

} // namespace besovlab
