#include "besovlab/extensions.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace besovlab {

// --- BVFunction --------------------------------------------------------------

BVFunction::BVFunction(std::vector<double> breaks, std::vector<Piece> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breaks_.size() + 1)
        throw validation_error("BVFunction: need breaks.size() + 1 pieces");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()))
        throw validation_error("BVFunction: breakpoints must be sorted");
    if (pieces_.front().slope != 0.0 || pieces_.back().slope != 0.0)
        throw validation_error("BVFunction: outer pieces must be constant");
}

BVFunction BVFunction::indicator(double lo, double hi) {
    if (!(lo < hi)) throw validation_error("BVFunction::indicator: lo < hi required");
    return BVFunction({lo, hi}, {Piece{0.0, 0.0}, Piece{1.0, 0.0}, Piece{0.0, 0.0}});
}

BVFunction BVFunction::constant(double c) { return BVFunction({}, {Piece{c, 0.0}}); }

BVFunction BVFunction::random_step(int steps, std::uint64_t seed) {
    if (steps < 1) throw validation_error("random_step: steps must be >= 1");
    std::set<double> cuts;
    std::uint64_t counter = 0;
    while (static_cast<int>(cuts.size()) < steps + 1) {
        const double x = uniform(seed, 21, counter++, 0.0, 1.0);
        // Keep a minimal gap so the quadrature lattice resolves each plateau.
        bool ok = true;
        for (double c : cuts)
            if (std::abs(c - x) < 0.02) ok = false;
        if (ok) cuts.insert(x);
    }
    std::vector<double> breaks(cuts.begin(), cuts.end());
    std::vector<Piece> pieces;
    pieces.push_back(Piece{0.0, 0.0});
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        pieces.push_back(Piece{uniform(seed, 22, i, -1.0, 1.0), 0.0});
    pieces.push_back(Piece{0.0, 0.0});
    return BVFunction(std::move(breaks), std::move(pieces));
}

double BVFunction::operator()(double x) const {
    std::size_t i = std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
    return pieces_[i].intercept + pieces_[i].slope * x;
}

double BVFunction::jump_at(std::size_t i) const {
    const double x = breaks_[i];
    const double left = pieces_[i].intercept + pieces_[i].slope * x;
    const double right = pieces_[i + 1].intercept + pieces_[i + 1].slope * x;
    return right - left;
}

double BVFunction::total_variation() const {
    KahanSum tv;
    for (std::size_t i = 0; i < breaks_.size(); ++i) tv.add(std::abs(jump_at(i)));
    for (std::size_t i = 1; i + 1 < pieces_.size(); ++i)
        tv.add(std::abs(pieces_[i].slope) * (breaks_[i] - breaks_[i - 1]));
    return tv.value();
}

double BVFunction::ess_sup() const {
    double m = -kInf;
    auto piece_extremes = [&](std::size_t i, double a, double b) {
        m = std::max(m, pieces_[i].intercept + pieces_[i].slope * a);
        m = std::max(m, pieces_[i].intercept + pieces_[i].slope * b);
    };
    m = std::max(pieces_.front().intercept, pieces_.back().intercept);
    for (std::size_t i = 1; i + 1 < pieces_.size(); ++i)
        piece_extremes(i, breaks_[i - 1], breaks_[i]);
    return m;
}

double BVFunction::ess_inf() const {
    double m = kInf;
    auto piece_extremes = [&](std::size_t i, double a, double b) {
        m = std::min(m, pieces_[i].intercept + pieces_[i].slope * a);
        m = std::min(m, pieces_[i].intercept + pieces_[i].slope * b);
    };
    m = std::min(pieces_.front().intercept, pieces_.back().intercept);
    for (std::size_t i = 1; i + 1 < pieces_.size(); ++i)
        piece_extremes(i, breaks_[i - 1], breaks_[i]);
    return m;
}

BVFunction BVFunction::scaled(double c) const {
    std::vector<Piece> pieces = pieces_;
    for (Piece& piece : pieces) {
        piece.intercept *= c;
        piece.slope *= c;
    }
    return BVFunction(breaks_, std::move(pieces));
}

AnalyticField BVFunction::field() const {
    auto self = std::make_shared<BVFunction>(*this);
    AnalyticField out;
    out.dim = 1;
    out.growth_exponent = 0;
    double radius = 1.0;
    for (double b : breaks_) radius = std::max(radius, std::abs(b) + 1.0);
    out.support_radius = radius;
    out.eval = [self](const Point& p) { return complexd((*self)(p[0]), 0.0); };
    return out;
}

// --- Poisson closed forms -----------------------------------------------------
//
// With u = y - x, f(x + u) = c + beta u per piece,
//   d/dx P f = (1/pi) int -2 t u / (u^2 + t^2)^2 (f(x+u) - f(x)) du
//   d/dt P f = (1/pi) int (u^2 - t^2) / (u^2 + t^2)^2 (f(x+u) - f(x)) du
// and the antiderivatives below are exact per piece.

namespace {

struct PieceRange {
    double u_lo, u_hi; // in u = y - x coordinates; may be +-inf
    double c, beta;    // f(x+u) - f(x) = c + beta u
};

std::vector<PieceRange> piece_ranges(const BVFunction& f, double x) {
    const double fx = f(x);
    const auto& breaks = f.breaks();
    const auto& pieces = f.pieces();
    std::vector<PieceRange> out;
    out.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        PieceRange r;
        r.u_lo = i == 0 ? -kInf : breaks[i - 1] - x;
        r.u_hi = i == breaks.size() ? kInf : breaks[i] - x;
        r.c = pieces[i].intercept + pieces[i].slope * x - fx;
        r.beta = pieces[i].slope;
        out.push_back(r);
    }
    return out;
}

// antiderivatives (vanish at +-inf where applicable)
double Px(double u, double t) { return t / (u * u + t * t); } // of -2tu/(u^2+t^2)^2
double Qx(double u, double t) {
    return -std::atan(u / t) + t * u / (u * u + t * t); // of u * (-2tu/(..)^2)
}
double Pt(double u, double t) { return -u / (u * u + t * t); } // of (u^2-t^2)/(..)^2
double Qt(double u, double t) {
    return 0.5 * std::log(u * u + t * t) + t * t / (u * u + t * t);
}
double Pv(double u, double t) { return std::atan(u / t); } // of t/(u^2+t^2)
double Qv(double u, double t) { return 0.5 * t * std::log(u * u + t * t); }

double eval_piecewise(const BVFunction& f, double x, double t,
                      double (*P)(double, double), double (*Q)(double, double),
                      double P_at_minus_inf, double P_at_plus_inf) {
    KahanSum acc;
    for (const PieceRange& r : piece_ranges(f, x)) {
        const double Plo = std::isinf(r.u_lo) ? P_at_minus_inf : P(r.u_lo, t);
        const double Phi = std::isinf(r.u_hi) ? P_at_plus_inf : P(r.u_hi, t);
        acc.add(r.c * (Phi - Plo));
        if (r.beta != 0.0) acc.add(r.beta * (Q(r.u_hi, t) - Q(r.u_lo, t)));
    }
    return acc.value() / kPi;
}

} // namespace

double poisson_dx(const BVFunction& f, double x, double t) {
    return eval_piecewise(f, x, t, Px, Qx, 0.0, 0.0);
}

double poisson_dt(const BVFunction& f, double x, double t) {
    return eval_piecewise(f, x, t, Pt, Qt, 0.0, 0.0);
}

double poisson_extension(const BVFunction& f, double x, double t) {
    // P f = f(x) + (1/pi) int t/(u^2+t^2) (f(x+u) - f(x)) du
    return f(x) + eval_piecewise(f, x, t, Pv, Qv, -0.5 * kPi, 0.5 * kPi);
}

// --- Heat closed forms ---------------------------------------------------------

namespace {

double gauss_kernel(double z, double t) {
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}
double gauss_cdf(double z, double t) {
    return 0.5 * (1.0 + std::erf(z / std::sqrt(4.0 * t)));
}

} // namespace

double heat_extension(const BVFunction& f, double x, double t) {
    // u = G_t * f: per piece int_{ya}^{yb} (a + b y) G_t(x - y) dy.
    KahanSum acc;
    const auto& breaks = f.breaks();
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double ya = i == 0 ? -kInf : breaks[i - 1];
        const double yb = i == breaks.size() ? kInf : breaks[i];
        // int G_t(x-y) dy over [ya, yb] = Phi(x - ya) - Phi(x - yb)
        const double m0 = (std::isinf(ya) ? 1.0 : gauss_cdf(x - ya, t)) -
                          (std::isinf(yb) ? 0.0 : gauss_cdf(x - yb, t));
        acc.add(pieces[i].intercept * m0);
        if (pieces[i].slope != 0.0) {
            // int y G_t(x-y) dy = x m0 - int z G_t(z) dz, z = x - y
            const double za = std::isinf(yb) ? -kInf : x - yb;
            const double zb = std::isinf(ya) ? kInf : x - ya;
            const double g_hi = std::isinf(zb) ? 0.0 : gauss_kernel(zb, t);
            const double g_lo = std::isinf(za) ? 0.0 : gauss_kernel(za, t);
            const double zint = -2.0 * t * (g_hi - g_lo); // int_za^zb z G_t dz
            acc.add(pieces[i].slope * (x * m0 - zint));
        }
    }
    return acc.value();
}

double heat_dx(const BVFunction& f, double x, double t) {
    // du/dx = G_t * f' with f' = jumps + slopes.
    KahanSum acc;
    const auto& breaks = f.breaks();
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i < breaks.size(); ++i)
        acc.add(f.jump_at(i) * gauss_kernel(x - breaks[i], t));
    for (std::size_t i = 1; i + 1 < pieces.size(); ++i) {
        if (pieces[i].slope == 0.0) continue;
        acc.add(pieces[i].slope *
                (gauss_cdf(x - breaks[i - 1], t) - gauss_cdf(x - breaks[i], t)));
    }
    return acc.value();
}

double heat_dt(const BVFunction& f, double x, double t) {
    // du/dt = d/dx (G_t * f') : same data against the kernel derivative.
    KahanSum acc;
    const auto& breaks = f.breaks();
    const auto& pieces = f.pieces();
    auto dgauss = [&](double z) { return -z / (2.0 * t) * gauss_kernel(z, t); };
    for (std::size_t i = 0; i < breaks.size(); ++i)
        acc.add(f.jump_at(i) * dgauss(x - breaks[i]));
    for (std::size_t i = 1; i + 1 < pieces.size(); ++i) {
        if (pieces[i].slope == 0.0) continue;
        acc.add(pieces[i].slope *
                (gauss_kernel(x - breaks[i - 1], t) - gauss_kernel(x - breaks[i], t)));
    }
    return acc.value();
}

// --- meshes --------------------------------------------------------------------

HalfSpaceMesh HalfSpaceMesh::make(double x_lo, double x_hi, int x_cells, double t_min,
                                  double t_max, int t_cells_per_decade) {
    if (!(x_lo < x_hi) || x_cells < 2 || !(0.0 < t_min && t_min < t_max))
        throw validation_error("HalfSpaceMesh::make: bad parameters");
    HalfSpaceMesh mesh;
    const double dx = (x_hi - x_lo) / x_cells;
    for (int i = 0; i < x_cells; ++i) {
        mesh.x_centers.push_back(x_lo + (i + 0.5) * dx);
        mesh.x_widths.push_back(dx);
    }
    const double decades = std::log10(t_max / t_min);
    const int t_cells = std::max(2, static_cast<int>(std::ceil(decades * t_cells_per_decade)));
    const double du = std::log(t_max / t_min) / t_cells;
    for (int i = 0; i < t_cells; ++i) {
        const double t = t_min * std::exp((i + 0.5) * du);
        mesh.t_centers.push_back(t);
        mesh.t_widths.push_back(t * du); // dt = t d(log t)
    }
    return mesh;
}

HalfSpaceMesh HalfSpaceMesh::make_corner_refined(double x_lo, double x_hi, double base_dx,
                                                 const std::vector<double>& corners,
                                                 double min_dx, double t_min, double t_max,
                                                 int t_cells_per_decade) {
    HalfSpaceMesh base = make(x_lo, x_hi, std::max(2, static_cast<int>((x_hi - x_lo) / base_dx)),
                              t_min, t_max, t_cells_per_decade);
    // Rebuild the x-cells: split any base cell containing or adjacent to a
    // corner into dyadically shrinking cells down to min_dx.
    std::vector<std::pair<double, double>> cells; // (center, width)
    std::function<void(double, double)> emit = [&](double lo, double w) {
        bool near_corner = false;
        for (double c : corners)
            if (c > lo - w && c < lo + 2.0 * w) near_corner = true;
        if (near_corner && w > min_dx) {
            emit(lo, w / 2.0);
            emit(lo + w / 2.0, w / 2.0);
        } else {
            cells.emplace_back(lo + 0.5 * w, w);
        }
    };
    const int n_base = static_cast<int>(base.x_centers.size());
    for (int i = 0; i < n_base; ++i)
        emit(base.x_centers[i] - 0.5 * base.x_widths[i], base.x_widths[i]);
    std::sort(cells.begin(), cells.end());
    HalfSpaceMesh mesh;
    mesh.t_centers = base.t_centers;
    mesh.t_widths = base.t_widths;
    for (const auto& [c, w] : cells) {
        mesh.x_centers.push_back(c);
        mesh.x_widths.push_back(w);
    }
    return mesh;
}

double HalfSpaceField::magnitude(std::size_t node, int component) const {
    if (component >= 0) return std::abs(components[static_cast<std::size_t>(component)][node]);
    double sq = 0.0;
    for (const auto& comp : components) sq += comp[node] * comp[node];
    return std::sqrt(sq);
}

// --- field builders --------------------------------------------------------------

namespace {

HalfSpaceField build_field(const HalfSpaceMesh& mesh, int ncomp,
                           const std::function<void(double, double, double*)>& fill) {
    HalfSpaceField out;
    out.mesh = mesh;
    const std::size_t nx = mesh.x_centers.size();
    const std::size_t nt = mesh.t_centers.size();
    out.components.assign(ncomp, std::vector<double>(nx * nt, 0.0));
    parallel_for(nt, [&](std::size_t it) {
        std::vector<double> vals(ncomp);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            fill(mesh.x_centers[ix], mesh.t_centers[it], vals.data());
            for (int c = 0; c < ncomp; ++c)
                out.components[static_cast<std::size_t>(c)][it * nx + ix] = vals[c];
        }
    });
    return out;
}

} // namespace

HalfSpaceField poisson_gradient(const BVFunction& f, const HalfSpaceMesh& mesh) {
    return build_field(mesh, 2, [&](double x, double t, double* v) {
        v[0] = poisson_dx(f, x, t);
        v[1] = poisson_dt(f, x, t);
    });
}

namespace {

// Difference-kernel quadrature for smooth fields: dyadic panels in u around 0
// at scale t, plus an analytic constant tail using f(inf) = 0.
double poisson_component_quad(const AnalyticField& f, double x, double t, bool x_comp) {
    const double support = f.support_radius.value_or(16.0);
    const double fx = f(Point{x, 0.0}).real();
    const double u_max = std::max(4.0 * (support + std::abs(x)), 64.0 * t);
    KahanSum acc;
    auto kernel = [&](double u) {
        const double denom = u * u + t * t;
        return x_comp ? -2.0 * t * u / (denom * denom)
                      : (u * u - t * t) / (denom * denom);
    };
    auto add_panel = [&](double a, double b) {
        acc.add(gl_integrate(
            [&](double u) {
                return kernel(u) * (f(Point{x + u, 0.0}).real() - fx);
            },
            a, b, 12));
    };
    const int lo_exp = -24;
    double edge = t * std::ldexp(1.0, lo_exp);
    add_panel(-edge, edge);
    for (double a = edge; a < u_max; a *= 2.0) {
        add_panel(a, std::min(2.0 * a, u_max));
        add_panel(-std::min(2.0 * a, u_max), -a);
    }
    // Constant tails: f(x+u) ~ 0 beyond the support.
    const double P_hi = x_comp ? Px(u_max, t) : Pt(u_max, t);
    const double P_lo = x_comp ? Px(-u_max, t) : Pt(-u_max, t);
    acc.add((0.0 - fx) * (0.0 - P_hi));
    acc.add((0.0 - fx) * (P_lo - 0.0));
    return acc.value() / kPi;
}

} // namespace

HalfSpaceField poisson_gradient(const AnalyticField& f, const HalfSpaceMesh& mesh) {
    if (f.dim != 1) throw validation_error("poisson_gradient: d = 1 only");
    return build_field(mesh, 2, [&](double x, double t, double* v) {
        v[0] = poisson_component_quad(f, x, t, true);
        v[1] = poisson_component_quad(f, x, t, false);
    });
}

HalfSpaceField heat_fields(const BVFunction& f, const HalfSpaceMesh& mesh, double b) {
    return build_field(mesh, 2, [&](double x, double t, double* v) {
        v[0] = std::pow(t, 0.5 - b) * heat_dx(f, x, t);
        v[1] = std::pow(t, 1.0 - b) * heat_dt(f, x, t);
    });
}

HalfSpaceField heat_fields(const AnalyticField& f, const HalfSpaceMesh& mesh, double b) {
    if (f.dim != 1) throw validation_error("heat_fields: d = 1 only");
    const double support = f.support_radius.value_or(16.0);
    auto u_and_derivs = [&](double x, double t, double* v) {
        // Quadrature against the Gaussian kernel and its derivatives.
        const double sigma = std::sqrt(2.0 * t);
        const double reach = std::max(8.0 * sigma, support + std::abs(x));
        auto conv = [&](auto&& kernel) {
            KahanSum acc;
            const int panels = 24;
            for (int i = 0; i < panels; ++i) {
                const double a = -reach + 2.0 * reach * i / panels;
                const double bb = -reach + 2.0 * reach * (i + 1) / panels;
                acc.add(gl_integrate(
                    [&](double z) { return kernel(z) * f(Point{x - z, 0.0}).real(); },
                    a, bb, 16));
            }
            return acc.value();
        };
        const double du_dx =
            conv([&](double z) { return -z / (2.0 * t) * gauss_kernel(z, t); });
        const double du_dt = conv([&](double z) {
            return (z * z / (4.0 * t * t) - 0.5 / t) * gauss_kernel(z, t);
        });
        v[0] = std::pow(t, 0.5 - b) * du_dx;
        v[1] = std::pow(t, 1.0 - b) * du_dt;
    };
    return build_field(mesh, 2, u_and_derivs);
}

// --- smooth kernels ---------------------------------------------------------------

double kernel_value(KernelTag tag, double z) {
    switch (tag) {
        case KernelTag::Psi1: return (1.0 - z * z) / (kPi * (1.0 + z * z) * (1.0 + z * z));
        case KernelTag::Psi2: return -2.0 * z / (kPi * (1.0 + z * z) * (1.0 + z * z));
        case KernelTag::Psi3:
            return (z * z - 2.0) * std::exp(-0.25 * z * z) / (8.0 * std::sqrt(kPi));
        case KernelTag::Psi4:
            return -z * std::exp(-0.25 * z * z) / (4.0 * std::sqrt(kPi));
    }
    return 0.0;
}

double kernel_integral(KernelTag tag) {
    // Rational kernels: integrate with the exact antiderivative tail; Gaussian
    // kernels decay fast enough for a wide panel.
    KahanSum acc;
    const double reach = tag == KernelTag::Psi1 || tag == KernelTag::Psi2 ? 1.0e6 : 40.0;
    const int panels = 64;
    double prev = 0.0;
    for (int i = 1; i <= panels; ++i) {
        const double edge = reach * std::pow(static_cast<double>(i) / panels, 4.0);
        acc.add(gl_integrate([&](double z) { return kernel_value(tag, z); }, prev, edge, 24));
        acc.add(gl_integrate([&](double z) { return kernel_value(tag, z); }, -edge, -prev, 24));
        prev = edge;
    }
    return acc.value();
}

HalfSpaceField smooth_kernel_field(const AnalyticField& f, KernelTag tag, double b,
                                   const HalfSpaceMesh& mesh) {
    if (f.dim != 1) throw validation_error("smooth_kernel_field: d = 1 only");
    if (!f.support_radius)
        throw validation_error("smooth_kernel_field: f needs a support hint");
    const double support = *f.support_radius;
    return build_field(mesh, 1, [&](double x, double t, double* v) {
        // (psi_t * f)(x) = int psi(z) f(x - t z) dz over the support of f.
        const double z_max = (support + std::abs(x)) / t + 2.0;
        KahanSum acc;
        double prev = 0.0;
        for (double edge = 1.0; prev < z_max; edge *= 2.0) {
            const double hi = std::min(edge, z_max);
            acc.add(gl_integrate(
                [&](double z) { return kernel_value(tag, z) * f(Point{x - t * z, 0.0}).real(); },
                prev, hi, 16));
            acc.add(gl_integrate(
                [&](double z) { return kernel_value(tag, z) * f(Point{x + t * z, 0.0}).real(); },
                prev, hi, 16));
            prev = hi;
        }
        v[0] = std::pow(t, -b) * acc.value();
    });
}

// --- lambda_gamma sweeps -----------------------------------------------------------

namespace {

WeightedValueSet lambda_gamma_pushforward(const HalfSpaceField& H, double gamma,
                                          int component) {
    const std::size_t nx = H.mesh.x_centers.size();
    const std::size_t nt = H.mesh.t_centers.size();
    WeightedValueSetBuilder builder;
    builder.reserve(nx * nt);
    for (std::size_t it = 0; it < nt; ++it) {
        const double t = H.mesh.t_centers[it];
        const double wt = std::pow(t, gamma - 1.0) * H.mesh.t_widths[it];
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double mass = wt * H.mesh.x_widths[ix];
            builder.add(H.magnitude(H.index(it, ix), component), mass);
        }
    }
    return builder.build();
}

} // namespace

double weak_norm_over_lambda_gamma(const HalfSpaceField& H, double p, double gamma,
                                   int component) {
    return weak_norm(lambda_gamma_pushforward(H, gamma, component), p);
}

std::vector<SweepRow> lambda_sweep(const HalfSpaceField& H, double p, double gamma,
                                   const std::vector<double>& lambdas, int component) {
    const std::size_t nx = H.mesh.x_centers.size();
    const std::size_t nt = H.mesh.t_centers.size();
    // Boundary maximum: values on the outermost t-rows and x-columns decide
    // whether a super-level set is clipped by the truncation.
    double boundary_max = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        boundary_max = std::max(boundary_max, H.magnitude(H.index(0, ix), component));
        boundary_max = std::max(boundary_max, H.magnitude(H.index(nt - 1, ix), component));
    }
    for (std::size_t it = 0; it < nt; ++it) {
        boundary_max = std::max(boundary_max, H.magnitude(H.index(it, 0), component));
        boundary_max = std::max(boundary_max, H.magnitude(H.index(it, nx - 1), component));
    }
    const WeightedValueSet set = lambda_gamma_pushforward(H, gamma, component);
    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) {
        SweepRow row;
        row.lambda = lambda;
        row.measure = distribution(set, lambda);
        row.lambda_p_measure = std::pow(lambda, p) * row.measure;
        row.interior = boundary_max <= lambda;
        rows.push_back(row);
    }
    return rows;
}

BVInequalityReport bv_inequality_check(const BVFunction& f, double p, double gamma,
                                       const NuGammaQuadrature* quad) {
    if (gamma >= -1.0 && gamma <= 0.0)
        throw validation_error("bv_inequality_check: gamma must avoid [-1, 0]");
    LorentzParams{p, kInf}.validate();
    const AnalyticField field = f.field();
    NuGammaQuadrature q;
    if (quad != nullptr) {
        q = *quad;
    } else {
        q = NuGammaQuadrature::auto_for(field, gamma, 1, -6, 5);
        q.x_spacing = 1.0 / 256.0;
    }
    const double b = (1.0 + gamma) / p; // s = 1/p
    BVInequalityReport report;
    report.lhs = weak_norm(difference_pushforward(field, 1, b, q), p);
    report.rhs = std::pow(f.vinfty_norm(), 1.0 - 1.0 / p) *
                 std::pow(f.total_variation(), 1.0 / p);
    report.ratio = report.rhs == 0.0 ? 0.0 : report.lhs / report.rhs;
    return report;
}

} // namespace besovlab
