#pragma once

#include "besovlab/differences.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// BVFunction: exact piecewise-linear-with-jumps representation on R (d = 1),
// constant outside the breakpoint span. Total variation and the V^infty
// seminorm inf_c ||f - c||_inf are computed exactly from the representation.
// ---------------------------------------------------------------------------
class BVFunction {
public:
    struct Piece {
        double intercept = 0.0; // value a + b x on the piece
        double slope = 0.0;
    };

    /// breaks.size() + 1 pieces: (-inf, x_0), [x_0, x_1), ..., [x_B, inf);
    /// the outer pieces must have zero slope.
    BVFunction(std::vector<double> breaks, std::vector<Piece> pieces);

    static BVFunction indicator(double lo, double hi);
    static BVFunction constant(double c);
    /// Random step function: `steps` jumps at seeded positions in (0, 1),
    /// values in [-1, 1], zero outside.
    static BVFunction random_step(int steps, std::uint64_t seed);

    double operator()(double x) const;
    double total_variation() const;
    double ess_sup() const;
    double ess_inf() const;
    double vinfty_norm() const { return 0.5 * (ess_sup() - ess_inf()); }

    BVFunction scaled(double c) const;
    AnalyticField field() const;

    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    double jump_at(std::size_t break_index) const;

private:
    std::vector<double> breaks_;
    std::vector<Piece> pieces_;
};

// ---------------------------------------------------------------------------
// Half-space meshes: log-uniform in t, cell-based in x with optional dyadic
// refinement toward singular points (jump corners).
// ---------------------------------------------------------------------------
struct HalfSpaceMesh {
    std::vector<double> x_centers;
    std::vector<double> x_widths;
    std::vector<double> t_centers;
    std::vector<double> t_widths;

    static HalfSpaceMesh make(double x_lo, double x_hi, int x_cells, double t_min,
                              double t_max, int t_cells_per_decade);
    /// Uniform base mesh plus dyadic refinement of the x-cells toward each
    /// listed point, down to `min_dx`.
    static HalfSpaceMesh make_corner_refined(double x_lo, double x_hi, double base_dx,
                                             const std::vector<double>& corners,
                                             double min_dx, double t_min, double t_max,
                                             int t_cells_per_decade);
    std::size_t node_count() const { return x_centers.size() * t_centers.size(); }
};

struct HalfSpaceField {
    HalfSpaceMesh mesh;
    std::vector<std::vector<double>> components; // [comp][it * nx + ix]
    std::size_t index(std::size_t it, std::size_t ix) const {
        return it * mesh.x_centers.size() + ix;
    }
    double magnitude(std::size_t node, int component) const; // -1 = Euclidean
};

// Exact closed-form Poisson extension of a BVFunction and its gradient
// (arctangent/logarithm antiderivatives; no quadrature error).
double poisson_extension(const BVFunction& f, double x, double t);
double poisson_dx(const BVFunction& f, double x, double t);
double poisson_dt(const BVFunction& f, double x, double t);

// Heat extension u = e^{t Delta} f of a BVFunction (error-function closed
// forms) and its derivatives.
double heat_extension(const BVFunction& f, double x, double t);
double heat_dx(const BVFunction& f, double x, double t);
double heat_dt(const BVFunction& f, double x, double t);

/// nabla P f on the mesh; components (d/dx, d/dt).
HalfSpaceField poisson_gradient(const BVFunction& f, const HalfSpaceMesh& mesh);
/// Quadrature version for smooth fields (difference-kernel form, so constants
/// map to zero exactly).
HalfSpaceField poisson_gradient(const AnalyticField& f, const HalfSpaceMesh& mesh);

/// Heat fields (H_1^b, H_2^b) = (t^{1/2-b} du/dx, t^{1-b} du/dt).
HalfSpaceField heat_fields(const BVFunction& f, const HalfSpaceMesh& mesh, double b);
HalfSpaceField heat_fields(const AnalyticField& f, const HalfSpaceMesh& mesh, double b);

enum class KernelTag { Psi1, Psi2, Psi3, Psi4 };

/// The smooth mean-zero kernels (d = 1, physical space):
///   psi1(z) = (1 - z^2) / (pi (1 + z^2)^2)   ~ t d/dt Poisson (up to sign)
///   psi2(z) = -2 z / (pi (1 + z^2)^2)        = t d/dx Poisson
///   psi3(z) = (z^2 - 2) e^{-z^2/4} / (8 sqrt(pi))  = tau d/dtau heat at tau = t^2
///   psi4(z) = -z e^{-z^2/4} / (4 sqrt(pi))        = t d/dx heat at tau = t^2
double kernel_value(KernelTag tag, double z);
/// Quadrature of the kernel over its effective support (mean-zero check).
double kernel_integral(KernelTag tag);

/// K^b f(x,t) = t^{-b} (psi_t * f)(x) on the mesh (single component).
/// Requires a support hint on f.
HalfSpaceField smooth_kernel_field(const AnalyticField& f, KernelTag tag, double b,
                                   const HalfSpaceMesh& mesh);

/// Pushforward of |H| (selected component, -1 for the Euclidean magnitude)
/// under lambda_gamma(dx dt) = t^{gamma-1} dt dx, then the weak norm.
double weak_norm_over_lambda_gamma(const HalfSpaceField& H, double p, double gamma,
                                   int component = -1);

struct SweepRow {
    double lambda = 0.0;
    double measure = 0.0;          // lambda_gamma{|H| > lambda}
    double lambda_p_measure = 0.0; // lambda^p * measure
    bool interior = true;          // super-level set clear of the mesh boundary
};

std::vector<SweepRow> lambda_sweep(const HalfSpaceField& H, double p, double gamma,
                                   const std::vector<double>& lambdas,
                                   int component = -1);

struct BVInequalityReport {
    double lhs = 0.0; // weak difference quasi-norm at s = 1/p
    double rhs = 0.0; // ||f||_Vinf^{1-1/p} ||f||_BV^{1/p}
    double ratio = 0.0;
};

/// The BV interpolation inequality at (s, r) = (1/p, inf): LHS computed by
/// difference quadrature, RHS exact; gamma must avoid [-1, 0].
BVInequalityReport bv_inequality_check(const BVFunction& f, double p, double gamma,
                                       const NuGammaQuadrature* quad = nullptr);

} // namespace besovlab
