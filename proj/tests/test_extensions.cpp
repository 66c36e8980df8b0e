#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/extensions.hpp"

using namespace besovlab;

namespace {

AnalyticField smooth_bump(double radius = 3.0) {
    return make_field_1d(
        [radius](double x) {
            const double u = x / radius;
            return std::abs(u) < 1.0 ? complexd(std::exp(-1.0 / (1.0 - u * u)))
                                     : complexd(0.0);
        },
        0, radius);
}

} // namespace

TEST_CASE("BV representation is exact") {
    const BVFunction f = BVFunction::indicator(0.0, 1.0);
    CHECK(f.total_variation() == 2.0);
    CHECK(f.vinfty_norm() == 0.5);
    CHECK(f(0.5) == 1.0);
    CHECK(f(-0.1) == 0.0);
    CHECK(f(1.5) == 0.0);

    const BVFunction g({0.0, 1.0, 2.0},
                       {{0.0, 0.0}, {0.0, 1.0}, {3.0, -1.0}, {0.5, 0.0}});
    // jumps: at 0: 0 -> 0; at 1: 1 -> 2; at 2: 1 -> 0.5. slopes add 1 + 1.
    CHECK(g.total_variation() == doctest::Approx(0.0 + 1.0 + 0.5 + 1.0 + 1.0));
    CHECK(g.ess_sup() == 2.0);
    CHECK(g.ess_inf() == 0.0);

    const BVFunction steps = BVFunction::random_step(6, 9);
    KahanSum jumps;
    for (std::size_t i = 0; i < steps.breaks().size(); ++i)
        jumps.add(std::abs(steps.jump_at(i)));
    CHECK(steps.total_variation() == doctest::Approx(jumps.value()).epsilon(1e-15));
}

TEST_CASE("poisson extension closed forms against the arctangent oracle") {
    const BVFunction f = BVFunction::indicator(0.0, 1.0);
    for (double x : {-0.7, 0.2, 0.5, 1.3})
        for (double t : {0.05, 0.4, 2.0}) {
            const double u_oracle =
                (std::atan((1.0 - x) / t) + std::atan(x / t)) / kPi;
            CHECK(poisson_extension(f, x, t) ==
                  doctest::Approx(u_oracle).epsilon(1e-12));
            const double dx_oracle =
                (t / (x * x + t * t) - t / ((1.0 - x) * (1.0 - x) + t * t)) / kPi;
            CHECK(poisson_dx(f, x, t) == doctest::Approx(dx_oracle).epsilon(1e-12));
            const double dt_oracle =
                -(x / (x * x + t * t) + (1.0 - x) / ((1.0 - x) * (1.0 - x) + t * t)) /
                kPi;
            CHECK(poisson_dt(f, x, t) == doctest::Approx(dt_oracle).epsilon(1e-12));
        }
}

TEST_CASE("poisson gradient of constants vanishes") {
    const BVFunction c = BVFunction::constant(3.2);
    CHECK(std::abs(poisson_dx(c, 0.4, 0.3)) < 1e-14);
    CHECK(std::abs(poisson_dt(c, 0.4, 0.3)) < 1e-14);
    const HalfSpaceMesh mesh = HalfSpaceMesh::make(-2, 2, 16, 0.01, 10.0, 8);
    const AnalyticField cf = make_field_1d([](double) { return complexd(1.5); }, 0, 8.0);
    const HalfSpaceField grad = poisson_gradient(cf, mesh);
    for (const auto& comp : grad.components)
        for (double v : comp) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("poisson extension of a truncated affine function") {
    // f = x on [-8, 8]: in the interior d/dx P f ~ 1 and d/dt P f ~ 0.
    const BVFunction f({-8.0, 8.0}, {{-8.0, 0.0}, {0.0, 1.0}, {8.0, 0.0}});
    for (double t : {0.05, 0.2}) {
        CHECK(poisson_dx(f, 0.0, t) == doctest::Approx(1.0).epsilon(1e-2));
        CHECK(std::abs(poisson_dt(f, 0.0, t)) < 1e-2);
    }
}

TEST_CASE("harmonicity and heat residuals on interior nodes") {
    const BVFunction f = BVFunction::indicator(0.0, 1.0);
    // Five-point stencil on the exact closed forms.
    for (double x : {0.3, 1.4})
        for (double t : {0.5, 1.1}) {
            const double h = t / 200.0;
            const double uxx = (poisson_extension(f, x + h, t) -
                                2.0 * poisson_extension(f, x, t) +
                                poisson_extension(f, x - h, t)) /
                               (h * h);
            const double utt = (poisson_extension(f, x, t + h) -
                                2.0 * poisson_extension(f, x, t) +
                                poisson_extension(f, x, t - h)) /
                               (h * h);
            CHECK(std::abs(uxx + utt) <=
                  1e-3 * (std::abs(uxx) + std::abs(utt) + 1e-9));

            const double ut = (heat_extension(f, x, t + h) -
                               heat_extension(f, x, t - h)) /
                              (2.0 * h);
            const double hxx = (heat_extension(f, x + h, t) -
                                2.0 * heat_extension(f, x, t) +
                                heat_extension(f, x - h, t)) /
                               (h * h);
            CHECK(std::abs(ut - hxx) <= 1e-3 * (std::abs(ut) + std::abs(hxx) + 1e-9));
        }
}

TEST_CASE("heat extension of a gaussian matches the closed form") {
    const AnalyticField f =
        make_field_1d([](double x) { return complexd(std::exp(-x * x)); }, 0, 10.0);
    const HalfSpaceMesh mesh = HalfSpaceMesh::make(-1.5, 1.5, 12, 0.05, 2.0, 6);
    const HalfSpaceField H = heat_fields(f, mesh, 0.5); // comp 0 = du/dx at b = 1/2
    const std::size_t nx = mesh.x_centers.size();
    for (std::size_t it = 0; it < mesh.t_centers.size(); it += 3) {
        const double t = mesh.t_centers[it];
        const double s = 1.0 + 4.0 * t;
        for (std::size_t ix = 0; ix < nx; ix += 3) {
            const double x = mesh.x_centers[ix];
            // e^{t Lap} e^{-x^2} = e^{-x^2/s} / sqrt(s)
            const double du_dx = -2.0 * x / s * std::exp(-x * x / s) / std::sqrt(s);
            CHECK(H.components[0][H.index(it, ix)] ==
                  doctest::Approx(du_dx).epsilon(1e-6));
        }
    }
}

TEST_CASE("smooth kernels are mean-zero and match the extension derivatives") {
    for (KernelTag tag :
         {KernelTag::Psi1, KernelTag::Psi2, KernelTag::Psi3, KernelTag::Psi4})
        CHECK(std::abs(kernel_integral(tag)) < 1e-10);

    const AnalyticField f = smooth_bump();
    const HalfSpaceMesh mesh = HalfSpaceMesh::make(-2.0, 2.0, 8, 0.2, 3.0, 4);
    const double b = 0.6;

    SUBCASE("psi1 against the poisson time derivative (opposite sign)") {
        const HalfSpaceField K = smooth_kernel_field(f, KernelTag::Psi1, b, mesh);
        const HalfSpaceField G = poisson_gradient(f, mesh);
        for (std::size_t node = 0; node < K.components[0].size(); ++node) {
            const std::size_t it = node / mesh.x_centers.size();
            const double t = mesh.t_centers[it];
            const double expect = -std::pow(t, 1.0 - b) * G.components[1][node];
            CHECK(K.components[0][node] == doctest::Approx(expect).epsilon(0.01));
        }
    }

    SUBCASE("psi2 against the poisson space derivative") {
        const HalfSpaceField K = smooth_kernel_field(f, KernelTag::Psi2, b, mesh);
        const HalfSpaceField G = poisson_gradient(f, mesh);
        for (std::size_t node = 0; node < K.components[0].size(); ++node) {
            const std::size_t it = node / mesh.x_centers.size();
            const double t = mesh.t_centers[it];
            const double expect = std::pow(t, 1.0 - b) * G.components[0][node];
            CHECK(K.components[0][node] ==
                  doctest::Approx(expect).epsilon(0.01).scale(1e-4));
        }
    }

    SUBCASE("psi4 against the heat space derivative at tau = t^2") {
        const HalfSpaceField K = smooth_kernel_field(f, KernelTag::Psi4, b, mesh);
        for (std::size_t it = 0; it < mesh.t_centers.size(); it += 2) {
            const double r = mesh.t_centers[it];
            const double tau = r * r;
            for (std::size_t ix = 0; ix < mesh.x_centers.size(); ix += 2) {
                const double x = mesh.x_centers[ix];
                // du/dx(x, tau) by direct Gaussian-kernel quadrature.
                const double du_dx = gl_integrate(
                    [&](double y) {
                        const double z = x - y;
                        return -z / (2.0 * tau) *
                               std::exp(-z * z / (4.0 * tau)) /
                               std::sqrt(4.0 * kPi * tau) * f(y).real();
                    },
                    -4.0, 4.0, 200);
                const double expect = std::pow(r, 1.0 - b) * du_dx;
                const std::size_t node = K.index(it, ix);
                CHECK(K.components[0][node] ==
                      doctest::Approx(expect).epsilon(0.01).scale(1e-4));
            }
        }
    }
}

TEST_CASE("weak norm over lambda_gamma on synthetic cell data") {
    HalfSpaceMesh mesh = HalfSpaceMesh::make(0.0, 2.0, 2, 1.0, 4.0, 1);
    // two x-cells (width 1), t-cells centered per decade spacing
    HalfSpaceField H;
    H.mesh = mesh;
    const std::size_t total = mesh.node_count();
    H.components.assign(1, std::vector<double>(total, 0.0));
    // Put value 2 on the first cell, 1 on the second; masses are
    // t^{gamma-1} dt dx per cell.
    H.components[0][0] = 2.0;
    H.components[0][1] = 1.0;
    const double gamma = 1.0;
    const double m0 = mesh.t_widths[0] * mesh.x_widths[0];
    // hand sum: sup(lambda mu^{1/p}): candidates 1 * (2 m0)^{1/2}, 2 * m0^{1/2}
    const double expect = std::max(std::sqrt(2.0 * m0), 2.0 * std::sqrt(m0));
    CHECK(weak_norm_over_lambda_gamma(H, 2.0, gamma, 0) ==
          doctest::Approx(expect).epsilon(1e-12));

    const auto rows = lambda_sweep(H, 2.0, gamma, {0.5, 1.5, 3.0}, 0);
    CHECK(rows[0].measure == doctest::Approx(2.0 * m0));
    CHECK(rows[1].measure == doctest::Approx(m0));
    CHECK(rows[2].measure == 0.0);
    CHECK_FALSE(rows[0].interior); // boundary cells carry values above 0.5
    CHECK(rows[2].interior);
}

TEST_CASE("zero field has zero weak norm") {
    HalfSpaceMesh mesh = HalfSpaceMesh::make(0.0, 1.0, 4, 0.1, 1.0, 4);
    HalfSpaceField H;
    H.mesh = mesh;
    H.components.assign(2, std::vector<double>(mesh.node_count(), 0.0));
    CHECK(weak_norm_over_lambda_gamma(H, 2.0, 1.0) == 0.0);
}

TEST_CASE("corner-refined meshes shrink cells near the corners") {
    const HalfSpaceMesh mesh = HalfSpaceMesh::make_corner_refined(
        -2.0, 3.0, 1.0 / 8.0, {0.0, 1.0}, 1.0 / 1024.0, 1e-4, 10.0, 8);
    double near_corner = kInf, far_field = 0.0;
    for (std::size_t i = 0; i < mesh.x_centers.size(); ++i) {
        const double d = std::min(std::abs(mesh.x_centers[i]),
                                  std::abs(mesh.x_centers[i] - 1.0));
        if (d < 0.01) near_corner = std::min(near_corner, mesh.x_widths[i]);
        if (d > 1.0) far_field = std::max(far_field, mesh.x_widths[i]);
    }
    CHECK(near_corner <= 1.0 / 1024.0);
    CHECK(far_field == doctest::Approx(1.0 / 8.0));
    // cells tile the interval
    KahanSum width;
    for (double w : mesh.x_widths) width.add(w);
    CHECK(width.value() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("BV inequality report") {
    SUBCASE("gamma range is enforced") {
        const BVFunction f = BVFunction::indicator(0.0, 1.0);
        CHECK_THROWS_AS(bv_inequality_check(f, 2.0, -0.5), validation_error);
    }
    SUBCASE("amplitude scaling cancels in the ratio") {
        const BVFunction f = BVFunction::random_step(4, 33);
        const BVInequalityReport a = bv_inequality_check(f, 2.0, 1.0);
        const BVInequalityReport b = bv_inequality_check(f.scaled(7.0), 2.0, 1.0);
        CHECK(a.ratio > 0.0);
        CHECK(std::abs(b.ratio - a.ratio) <= 1e-10 * a.ratio);
        // both sides are 1-homogeneous
        CHECK(b.lhs == doctest::Approx(7.0 * a.lhs).epsilon(1e-12));
        CHECK(b.rhs == doctest::Approx(7.0 * a.rhs).epsilon(1e-12));
    }
    SUBCASE("smooth bumps sit inside the step-function bracket scale") {
        const BVFunction f = BVFunction::indicator(0.0, 1.0);
        const BVInequalityReport step = bv_inequality_check(f, 2.0, 1.0);
        // A smooth compact bump: exact BV data via a fine piecewise-linear
        // interpolation of the bump.
        std::vector<double> breaks;
        std::vector<BVFunction::Piece> pieces;
        const int segments = 160;
        const AnalyticField bump = smooth_bump(1.0);
        pieces.push_back({0.0, 0.0});
        for (int i = 0; i <= segments; ++i) {
            const double x0 = -1.0 + 2.0 * i / segments;
            if (i < segments) {
                const double x1 = -1.0 + 2.0 * (i + 1) / segments;
                const double y0 = bump(x0).real(), y1 = bump(x1).real();
                const double slope = (y1 - y0) / (x1 - x0);
                breaks.push_back(x0);
                pieces.push_back({y0 - slope * x0, slope});
            } else {
                breaks.push_back(x0);
                pieces.push_back({0.0, 0.0});
            }
        }
        const BVFunction smooth(std::move(breaks), std::move(pieces));
        const BVInequalityReport rep = bv_inequality_check(smooth, 2.0, 1.0);
        CHECK(rep.ratio > 0.0);
        CHECK(rep.ratio < 10.0 * step.ratio);
    }
}
