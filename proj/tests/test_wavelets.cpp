#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/harness.hpp"
#include "besovlab/wavelets.hpp"
#include "support/oracles.hpp"

using namespace besovlab;

namespace {

SampledFunction random_samples(int n, double box, std::uint64_t seed) {
    std::vector<complexd> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        values[i] = complexd(uniform(seed, 1, i, -1, 1), uniform(seed, 2, i, -1, 1));
    return SampledFunction(1, box, n, std::move(values));
}

WaveletCoeffTree random_small_tree(const WaveletBasis& basis, int coeffs,
                                   std::uint64_t seed) {
    WaveletCoeffTree tree = analyze(SampledFunction::zero(1, 1.0, 256), basis, 3);
    const std::size_t total = tree.entries().size();
    std::size_t placed = 0, counter = 0;
    while (placed < static_cast<std::size_t>(coeffs)) {
        const std::size_t idx = static_cast<std::size_t>(
            uniform01(seed, 7, counter++) * static_cast<double>(total));
        WaveletEntry& e = tree.entries()[std::min(idx, total - 1)];
        if (std::abs(e.c) > 0.0) continue;
        e.c = complexd(uniform(seed, 8, counter, -2.0, 2.0), 0.0);
        if (std::abs(e.c) < 0.05) e.c = complexd(0.5, 0.0);
        ++placed;
    }
    return tree;
}

} // namespace

TEST_CASE("filters are orthonormal quadrature mirror pairs") {
    for (int u = 2; u <= 6; ++u) {
        const WaveletBasis basis(u);
        const auto& h = basis.lowpass();
        KahanSum sum, sumsq;
        for (double c : h) {
            sum.add(c);
            sumsq.add(c * c);
        }
        CHECK(sum.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(sumsq.value() == doctest::Approx(1.0).epsilon(1e-9));
        for (int shift = 1; 2 * shift < basis.filter_length(); ++shift) {
            KahanSum dot;
            for (int j = 0; j + 2 * shift < basis.filter_length(); ++j)
                dot.add(h[j] * h[j + 2 * shift]);
            CHECK(std::abs(dot.value()) < 1e-9);
        }
    }
}

TEST_CASE("cascade tables: partition of unity and vanishing moments") {
    const WaveletBasis basis(3);
    for (double x : {0.1, 0.37, 0.72}) {
        KahanSum sum;
        for (int k = -6; k <= 6; ++k) sum.add(basis.phi_value(x - k));
        CHECK(sum.value() == doctest::Approx(1.0).epsilon(1e-6));
    }
    // int x^a psi = 0 for a < u.
    for (int a = 0; a < 3; ++a) {
        const double moment = gl_integrate(
            [&](double x) { return std::pow(x, a) * basis.psi_value(x); },
            basis.psi_support_lo(), basis.psi_support_hi(), 400);
        CHECK(std::abs(moment) < 2e-4);
    }
}

TEST_CASE("analysis round-trip and Parseval") {
    for (int u : {2, 4}) {
        const WaveletBasis basis(u);
        const SampledFunction f = random_samples(512, 2.0, 31 + u);
        const WaveletCoeffTree tree = analyze(f, basis, 3);
        const SampledFunction back = synthesize(tree, basis);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            worst = std::max(worst, std::abs(back[i] - f[i]));
        CHECK(worst <= 1e-8 * f.max_abs());

        KahanSum energy;
        for (const auto& e : tree.entries()) energy.add(std::norm(e.c));
        const double l2 = f.l2_norm();
        CHECK(energy.value() == doctest::Approx(l2 * l2).epsilon(1e-8));
    }
}

TEST_CASE("two-dimensional round-trip and Parseval") {
    const WaveletBasis basis(3);
    const int n = 64;
    std::vector<complexd> values(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = complexd(uniform(5, 1, i, -1, 1), uniform(5, 2, i, -1, 1));
    const SampledFunction f(2, 4.0, n, std::move(values));
    const WaveletCoeffTree tree = analyze(f, basis, 2);
    const SampledFunction back = synthesize(tree, basis);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::abs(back[i] - f[i]));
    CHECK(worst <= 1e-8 * f.max_abs());
    KahanSum energy;
    for (const auto& e : tree.entries()) energy.add(std::norm(e.c));
    const double l2 = f.l2_norm();
    CHECK(energy.value() == doctest::Approx(l2 * l2).epsilon(1e-8));
}

TEST_CASE("a single basis function analyzes to a unit coefficient") {
    const WaveletBasis basis(3);
    WaveletCoeffTree unit = analyze(SampledFunction::zero(1, 1.0, 256), basis, 3);
    // pick a mid-level detail entry
    for (auto& e : unit.entries())
        if (e.e == 1 && e.level == 5 && e.m == 13) e.c = 1.0;
    const SampledFunction g = synthesize(unit, basis);
    const WaveletCoeffTree back = analyze(g, basis, 3);
    for (std::size_t i = 0; i < back.entries().size(); ++i) {
        const auto& e = back.entries()[i];
        const double expect =
            (e.e == 1 && e.level == 5 && e.m == 13) ? 1.0 : 0.0;
        CHECK(std::abs(e.c - complexd(expect)) < 1e-10);
    }
}

TEST_CASE("zero function gives an all-zero tree") {
    const WaveletBasis basis(2);
    const WaveletCoeffTree tree = analyze(SampledFunction::zero(1, 1.0, 128), basis, 2);
    CHECK(tree.nonzero_count(1e-14) == 0);
}

TEST_CASE("level-range overflow throws") {
    const WaveletBasis basis(2);
    const SampledFunction f = random_samples(128, 1.0, 3);
    CHECK_THROWS_AS(analyze(f, basis, 9), validation_error);
    CHECK_THROWS_AS(analyze(f, basis, -1), validation_error);
}

TEST_CASE("greedy n-term approximation") {
    const WaveletBasis basis(3);

    SUBCASE("single wavelet: sigma_0 = ||psi||_q, sigma_1 = 0") {
        WaveletCoeffTree tree = analyze(SampledFunction::zero(1, 1.0, 256), basis, 3);
        for (auto& e : tree.entries())
            if (e.e == 1 && e.level == 4 && e.m == 7) e.c = 2.0;
        const double q = 3.0;
        const std::vector<double> sigma = greedy_sigma_table(tree, basis, q, 2);
        const SampledFunction g = synthesize(tree, basis);
        CHECK(sigma[0] == doctest::Approx(grid_lq_norm(g, q)).epsilon(1e-12));
        CHECK(sigma[1] <= 1e-12);
        CHECK(sigma[2] == 0.0);
        // Approximation-space convention: the norm runs over n >= 1, so a
        // single-wavelet function has zero A-norm at r = inf.
        CHECK(approx_space_norm(tree, basis, q, 0.4, kInf, 16).value <= 1e-12);
    }

    SUBCASE("nonincreasing in n, homogeneous in the coefficients") {
        const WaveletCoeffTree tree = random_small_tree(basis, 10, 17);
        const std::vector<double> sigma = greedy_sigma_table(tree, basis, 2.0, 12);
        for (std::size_t n = 1; n < sigma.size(); ++n)
            CHECK(sigma[n] <= sigma[n - 1] * (1.0 + 1e-12));
        WaveletCoeffTree scaled = tree;
        for (auto& e : scaled.entries()) e.c *= 3.0;
        const std::vector<double> sigma3 = greedy_sigma_table(scaled, basis, 2.0, 12);
        for (std::size_t n = 0; n < sigma.size(); ++n)
            CHECK(sigma3[n] == doctest::Approx(3.0 * sigma[n]).epsilon(1e-10));
    }

    SUBCASE("n beyond the nonzero count gives exactly zero") {
        const WaveletCoeffTree tree = random_small_tree(basis, 5, 23);
        CHECK(greedy_sigma_n(tree, basis, 2.0, 7) == 0.0);
    }

    SUBCASE("two-coefficient tree against the exhaustive oracle") {
        const WaveletCoeffTree tree = random_small_tree(basis, 2, 29);
        const auto greedy = greedy_sigma_table(tree, basis, 2.5, 2);
        const auto best = testing::exhaustive_sigma_table(tree, basis, 2.5, 2);
        for (std::size_t n = 0; n <= 2; ++n) {
            CHECK(greedy[n] >= best[n] - 1e-12);
            CHECK(greedy[n] <= 4.0 * best[n] + 1e-12);
        }
    }

    SUBCASE("greedy within factor 4 of exhaustive, trees up to 12 coefficients") {
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            const int count = 6 + static_cast<int>(seed);
            const WaveletCoeffTree tree = random_small_tree(basis, count, 101 + seed);
            for (double q : {1.5, 2.0, 3.0}) {
                const auto greedy = greedy_sigma_table(
                    tree, basis, q, static_cast<std::size_t>(count));
                const auto best = testing::exhaustive_sigma_table(
                    tree, basis, q, static_cast<std::size_t>(count));
                for (std::size_t n = 0; n <= static_cast<std::size_t>(count); ++n)
                    CHECK(greedy[n] <= 4.0 * best[n] + 1e-12);
            }
        }
    }
}

TEST_CASE("weak-l^tau profiles: slope of sigma_n and A-norm stabilization") {
    const WaveletBasis basis(3);
    const double q = 2.0, alpha = 0.3;
    const double tau = 1.0 / (alpha + 1.0 / q);
    const WaveletCoeffTree tree =
        prescribed_decay_tree(1.0, 4096, 3, basis, 4, 9, 96, tau, q, 7);

    const std::size_t n_max = 72;
    const auto sigma = greedy_sigma_table(tree, basis, q, n_max);

    // Tail-sum oracle for the same weights.
    std::vector<double> weights;
    for (const auto& e : tree.entries())
        if (std::abs(e.c) > 0.0) weights.push_back(tree.q_weight(e, q));
    std::sort(weights.rbegin(), weights.rend());
    const auto oracle = testing::tail_sum_sigma(weights, q, n_max);

    std::vector<std::pair<double, double>> fit_data, oracle_data;
    for (std::size_t n = 4; n <= 64; n += 4) {
        fit_data.emplace_back(static_cast<double>(n), sigma[n]);
        oracle_data.emplace_back(static_cast<double>(n), oracle[n]);
    }
    const SlopeFit fit = slope_fit(fit_data);
    const SlopeFit ofit = slope_fit(oracle_data);
    CHECK(std::abs(fit.slope - (-alpha)) < 0.1);
    CHECK(std::abs(fit.slope - ofit.slope) < 0.1);

    // A^alpha_inf norm stabilizes across n-decades for the critical alpha.
    double lo = kInf, hi = 0.0;
    for (std::size_t n = 8; n <= n_max; ++n) {
        const double v = std::pow(static_cast<double>(n), alpha) * sigma[n];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("coefficient tree serializes to JSON and back") {
    const WaveletBasis basis(2);
    const WaveletCoeffTree tree = random_small_tree(basis, 6, 47);
    const WaveletCoeffTree back = WaveletCoeffTree::from_json(tree.to_json());
    REQUIRE(back.entries().size() == tree.entries().size());
    for (std::size_t i = 0; i < tree.entries().size(); ++i) {
        CHECK(back.entries()[i].e == tree.entries()[i].e);
        CHECK(back.entries()[i].level == tree.entries()[i].level);
        CHECK(back.entries()[i].m == tree.entries()[i].m);
        CHECK(std::abs(back.entries()[i].c - tree.entries()[i].c) == 0.0);
    }
}

TEST_CASE("wavelet sum field matches the grid synthesis off-grid") {
    const WaveletBasis basis(4); // smoother basis keeps interpolation error low
    WaveletCoeffTree tree = analyze(SampledFunction::zero(1, 1.0, 4096), basis, 3);
    for (auto& e : tree.entries()) {
        if (e.e == 1 && e.level == 5 && e.m == 11) e.c = 1.3;
        if (e.e == 1 && e.level == 7 && e.m == 52) e.c = -0.7;
    }
    const AnalyticField field = wavelet_sum_field(tree, basis);
    const SampledFunction grid = synthesize(tree, basis);
    const double cell_root = std::sqrt(grid.cell_volume());
    double worst = 0.0;
    for (int i = 400; i < 4000; i += 37) {
        const double x = grid.box() * i / grid.n();
        // Grid samples are scaling-coefficient normalized; the field is the
        // continuum sum, so compare function values directly.
        worst = std::max(worst, std::abs(field(x) - grid[i]));
    }
    (void)cell_root;
    CHECK(worst < 5e-3 * grid.max_abs());
}

TEST_CASE("approximation norm versus difference norm, single function") {
    const WaveletBasis basis(3);
    const double q = 2.0, alpha = 0.3;
    const double tau = 1.0 / (alpha + 1.0 / q);
    const WaveletCoeffTree tree =
        prescribed_decay_tree(1.0, 2048, 3, basis, 4, 8, 24, tau, q, 3);
    const ComparisonReport rep = approximation_vs_difference(tree, basis, q, alpha, 1, 48);
    CHECK(rep.lhs > 0.0);
    CHECK(rep.rhs > 0.0);
    CHECK(rep.ratio() > 0.02);
    CHECK(rep.ratio() < 50.0);
}
