#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "besovlab/counterexamples.hpp"
#include "besovlab/harness.hpp"

using namespace besovlab;

TEST_CASE("bump profile invariants") {
    const BumpProfile& eta = BumpProfile::standard();
    CHECK(eta.c0() > 0.0);
    CHECK(eta.peak() >= eta.c0());

    // The tabulated bump really is band-limited: sample it on a box and check
    // the spectrum off the annulus.
    const int n = 8192;
    const double box = 512.0;
    std::vector<complexd> values(n);
    for (int i = 0; i < n; ++i) values[i] = eta(box * i / n - 0.5 * box);
    const Spectrum spec = to_spectrum(SampledFunction(1, box, n, std::move(values)));
    double inside = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double rho = spec.frequency_radius(i);
        const double mag = std::abs(spec[i]);
        if (rho >= 15.0 / 16.0 && rho <= 17.0 / 16.0)
            inside = std::max(inside, mag);
        else
            outside = std::max(outside, mag);
    }
    CHECK(outside < 1e-10 * inside);
}

TEST_CASE("envelope profile exceeds one on the unit interval") {
    const BumpProfile& env = BumpProfile::envelope();
    for (double x = -1.0; x <= 1.0; x += 0.05) CHECK(env(x) > 1.0);
    CHECK(env.spectrum_hi() == doctest::Approx(1.0 / 32.0));
}

TEST_CASE("build_F band structure") {
    SUBCASE("smallest instance: N = 1, gamma = 0 occupies the single band k = 2") {
        CounterexampleSpec spec;
        spec.gamma = 0.0;
        spec.s = 0.5;
        spec.p = 2.0;
        spec.N = 1;
        const VirtualFunction F = build_F(spec);
        REQUIRE(F.bands.size() == 1);
        CHECK(F.bands[0].k == 2);
        // floor(2^{k(d+gamma)}) = 4 at k = 2, gamma = 0.
        CHECK(F.bands[0].multiplicity == 4.0);
        CHECK(F.bands[0].amplitude ==
              doctest::Approx(std::pow(2.0, -2.0 * 0.5)).epsilon(1e-15));
    }
    SUBCASE("gamma = -d gives one bump per band") {
        CounterexampleSpec spec;
        spec.gamma = -1.0;
        spec.N = 3;
        const VirtualFunction F = build_F(spec);
        REQUIRE(F.bands.size() == 3);
        for (const auto& band : F.bands) CHECK(band.multiplicity == 1.0);
    }
    SUBCASE("gamma = 1, k = 3 carries 64 bumps") {
        CounterexampleSpec spec;
        spec.gamma = 1.0;
        spec.N = 2;
        const VirtualFunction F = build_F(spec);
        REQUIRE(F.bands.size() == 2);
        CHECK(F.bands[0].k == 3);
        CHECK(F.bands[0].multiplicity == 64.0);
    }
    SUBCASE("gamma < -d uses the negative band range") {
        CounterexampleSpec spec;
        spec.gamma = -1.5;
        spec.N = 2;
        const VirtualFunction F = build_F(spec);
        REQUIRE(F.bands.size() == 2);
        CHECK(F.bands.front().k == -3);
        CHECK(F.bands.back().k == -2);
        for (const auto& band : F.bands) CHECK(band.multiplicity >= 1.0);
    }
    SUBCASE("multiplicity cap aborts with guidance") {
        CounterexampleSpec spec;
        spec.gamma = 3.0;
        spec.N = 8;
        spec.multiplicity_cap = 1e6;
        CHECK_THROWS_WITH_AS(build_F(spec), doctest::Contains("reduce N or gamma"),
                             validation_error);
    }
}

TEST_CASE("virtual norms reproduce the expected slope data qualitatively") {
    // Weak norm at the construction gamma grows ~ N^{1/p}; the cross norm at
    // beta != gamma grows ~ N^{1/r}.
    const double s = 0.5, p = 2.0, r = 4.0, gamma = 0.5;
    const GrowthTable table = counterexample_growth(gamma, s, p, r, gamma - 1.0, 2, 6);
    const SlopeFit weak = table.slopes.at("scriptB_gamma_weak");
    CHECK(std::abs(weak.slope - 0.5) < 0.15);
    CHECK(table.slopes.at("scriptB_beta_r").slope < 0.25 + 0.15);
    CHECK(table.slopes.at("besov_p_r").slope < 0.25 + 0.15);
    for (const auto& row : table.rows) CHECK(row.tail_error < 0.05 * row.value);
}

TEST_CASE("the G-rescaling identity holds exactly on the virtual model") {
    CounterexampleSpec spec;
    spec.gamma = -1.5;
    spec.s = 0.5;
    spec.p = 2.0;
    spec.N = 3;
    const VirtualFunction F = build_F(spec);
    const VirtualFunction G = dilate_virtual(F, 3 * spec.N, spec.s, spec.p);
    CHECK(G.bands.front().k == -2 * spec.N + 1 + 3 * spec.N);
    for (NormFamily family :
         {NormFamily::ScriptB, NormFamily::BesovQ, NormFamily::TLLorentz}) {
        for (double r : {1.5, kInf}) {
            BesovParams params{spec.s, spec.p, r, r, spec.gamma, true};
            const double a = virtual_norm(F, family, params).report.value;
            const double b = virtual_norm(G, family, params).report.value;
            CHECK(b == doctest::Approx(a).epsilon(1e-12));
        }
    }
}

TEST_CASE("virtual replication agrees with a fully gridded computation") {
    // N = 2, gamma = 0.5 is small enough to grid directly.
    CounterexampleSpec spec;
    spec.gamma = 0.5;
    spec.s = 0.5;
    spec.p = 2.0;
    spec.N = 2;
    spec.separation = 16;
    const VirtualFunction F = build_F(spec);

    const double box = 512.0;
    const int n = 1 << 15;
    const SampledFunction grid = materialize(F, spec, box, n);

    const BandRange bands{2, 5};
    for (double r : {2.0, kInf}) {
        BesovParams params{spec.s, spec.p, r, r, spec.gamma, true};
        const VirtualNormResult virt = virtual_norm(F, NormFamily::ScriptB, params);
        const double gridded = script_b_norm(grid, params, bands).value;
        const double tol =
            std::max(0.025 * virt.report.value, 3.0 * virt.tail_error);
        CHECK(std::abs(gridded - virt.report.value) < tol);
    }
}

TEST_CASE("separation policy insensitivity") {
    CounterexampleSpec spec;
    spec.gamma = 0.5;
    spec.s = 0.5;
    spec.p = 2.0;
    spec.N = 2;
    const VirtualFunction F = build_F(spec);
    const BandRange bands{2, 5};
    BesovParams params{spec.s, spec.p, kInf, kInf, spec.gamma, true};
    std::vector<double> values;
    for (int separation : {8, 16, 32}) {
        CounterexampleSpec s2 = spec;
        s2.separation = separation;
        const SampledFunction grid = materialize(F, s2, 1024.0, 1 << 16);
        values.push_back(script_b_norm(grid, params, bands).value);
    }
    for (double v : values)
        CHECK(v == doctest::Approx(values.front()).epsilon(0.01));
}

TEST_CASE("modulated log examples") {
    const double s = 0.5, p = 2.0;

    SUBCASE("weak scriptB(0, inf) values of the divergent witness grow monotonically") {
        double prev = 0.0;
        for (int K : {16, 32, 64, 128}) {
            const VirtualFunction f =
                build_log_example(s, p, LogExampleVariant::DivergentWeak, K);
            BesovParams params{s, p, kInf, kInf, 0.0, true};
            const double v = virtual_norm(f, NormFamily::ScriptB, params).report.value;
            CHECK(v > prev * 1.02);
            prev = v;
        }
    }

    SUBCASE("TL norm of the divergent witness is bounded for r > p") {
        std::vector<double> values;
        for (int K : {16, 32, 64, 128}) {
            const VirtualFunction f =
                build_log_example(s, p, LogExampleVariant::DivergentWeak, K);
            BesovParams params{s, p, p, 2.0 * p, 0.0, true}; // F^s_{p,2p}
            values.push_back(virtual_norm(f, NormFamily::TLLorentz, params).report.value);
        }
        for (std::size_t i = 1; i < values.size(); ++i) {
            const double growth = values[i] / values[i - 1];
            CHECK(growth < 1.10);
        }
    }

    SUBCASE("the summable witness stays bounded in scriptB(0, 1)") {
        std::vector<double> values;
        for (int K : {16, 32, 64, 128}) {
            const VirtualFunction g =
                build_log_example(s, p, LogExampleVariant::SummableOne, K);
            BesovParams params{s, p, 1.0, 1.0, 0.0, true};
            values.push_back(virtual_norm(g, NormFamily::ScriptB, params).report.value);
        }
        for (std::size_t i = 1; i < values.size(); ++i)
            CHECK(values[i] / values[i - 1] < 1.25);
        // growth ratios shrink: the sequence is converging, not diverging
        CHECK(values[3] / values[2] < values[1] / values[0]);
    }
}
