#include "besovlab/harness.hpp"

#include "besovlab/version.hpp"

#include <fstream>
#include <sstream>

namespace besovlab {

double ExperimentPlan::get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (it->second == "inf") return kInf;
    return std::stod(it->second);
}

int ExperimentPlan::get_int(const std::string& key, int fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : std::stoi(it->second);
}

std::string ExperimentPlan::get_str(const std::string& key,
                                    const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

ExperimentPlan ExperimentPlan::from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("ExperimentPlan: cannot open " + path);
    ExperimentPlan plan;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "tag")
            plan.tag = value;
        else if (key == "seed")
            plan.seed = std::stoull(value);
        else if (key == "output")
            plan.output_path = value;
        else
            plan.params[key] = value;
    }
    return plan;
}

std::string ExperimentPlan::echo() const {
    std::ostringstream out;
    out << "tag=" << tag << " seed=" << seed;
    for (const auto& [k, v] : params) out << ' ' << k << '=' << v;
    return out.str();
}

std::string report_header(const ExperimentPlan& plan) {
    std::ostringstream out;
    out << "# besovlab " << kVersion << " (" << kGitDescribe << ")\n";
    out << "# plan: " << plan.echo() << "\n";
    return out.str();
}

// --- standard family ----------------------------------------------------------

std::string FamilyEntry::name() const {
    std::ostringstream out;
    out << (profile == 0 ? "std" : "wide") << "_m" << dilation;
    if (translation != 0.0) out << "_t" << translation;
    if (modulated) out << "_mod";
    return out.str();
}

std::vector<FamilyEntry> standard_family() {
    // Versioned manifest (v1): 30 entries. Dilations 2^-2..2^2 on both
    // profiles; translated by 0.3 L unmodulated; modulated at 2^3 untranslated.
    std::vector<FamilyEntry> family;
    for (int profile = 0; profile < 2; ++profile)
        for (int m = -2; m <= 2; ++m) family.push_back({profile, m, 0.0, false});
    for (int profile = 0; profile < 2; ++profile)
        for (int m = -2; m <= 2; ++m) family.push_back({profile, m, 0.3, false});
    for (int profile = 0; profile < 2; ++profile)
        for (int m = -2; m <= 2; ++m) family.push_back({profile, m, 0.0, true});
    return family;
}

namespace {

double effective_radius(const BumpProfile& profile, double rel_threshold) {
    const double cut = rel_threshold * profile.peak();
    double radius = profile.table_step();
    const auto& cells = profile.cells();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].first > cut) radius = (static_cast<double>(i) + 1.0) * profile.table_step();
    return radius;
}

constexpr double kModulationFrequency = 8.0; // 2^3

} // namespace

FamilyFunction realize(const FamilyEntry& entry, double box, int n) {
    const BumpProfile& profile =
        entry.profile == 0 ? BumpProfile::standard() : BumpProfile::wide();
    AnalyticField f = profile.field();
    const double base_radius = effective_radius(profile, 1e-6);
    f.support_radius = base_radius;
    f = dilate_renormalized(f, entry.dilation, 1.0, 1.0); // plain dilation
    const double center = 0.5 * box + entry.translation * box;
    f = translate(f, Point{center, 0.0});
    if (entry.modulated) f = modulate(f, kModulationFrequency);

    FamilyFunction out{entry, f, sample_field(f, box, n, entry.name())};
    return out;
}

// --- band cache: |L_k f| on the lattice, reused across parameters --------------

namespace {

struct BandCache {
    int k0 = 0;
    double cell = 0.0;
    std::vector<std::vector<double>> mags; // [band][lattice point]
};

BandCache cache_bands(const SampledFunction& samples, const BandRange& bands) {
    BandCache cache;
    cache.k0 = bands.k_min;
    cache.cell = samples.cell_volume();
    const LPFamily family(bands.k_min, bands.k_max);
    const Spectrum spec = to_spectrum(samples);
    for (int k = bands.k_min; k <= bands.k_max; ++k) {
        const SampledFunction band = to_samples(lp_project(spec, family, k));
        std::vector<double> mags(band.size());
        for (std::size_t i = 0; i < band.size(); ++i) mags[i] = std::abs(band[i]);
        cache.mags.push_back(std::move(mags));
    }
    return cache;
}

double script_b_from_cache(const BandCache& cache, double s, double p, double r,
                           double gamma) {
    WeightedValueSetBuilder builder;
    const double b = s + gamma / p;
    for (std::size_t bi = 0; bi < cache.mags.size(); ++bi) {
        const int k = cache.k0 + static_cast<int>(bi);
        const double amp = std::pow(2.0, k * b);
        const double mass = std::pow(2.0, -k * gamma) * cache.cell;
        for (double m : cache.mags[bi]) builder.add(amp * m, mass);
    }
    return quasi_norm(builder.build(), LorentzParams{p, r});
}

double besov_lorentz_from_cache(const BandCache& cache, double s, double p, double r,
                                double q) {
    std::vector<double> terms;
    for (std::size_t bi = 0; bi < cache.mags.size(); ++bi) {
        const int k = cache.k0 + static_cast<int>(bi);
        WeightedValueSetBuilder builder;
        for (double m : cache.mags[bi]) builder.add(m, cache.cell);
        terms.push_back(std::pow(2.0, k * s) *
                        quasi_norm(builder.build(), LorentzParams{p, r}));
    }
    if (is_inf(q)) {
        double best = 0.0;
        for (double t : terms) best = std::max(best, t);
        return best;
    }
    KahanSum acc;
    for (double t : terms) acc.add(std::pow(t, q));
    return std::pow(acc.value(), 1.0 / q);
}

double tl_lorentz_from_cache(const BandCache& cache, double s, double p, double r,
                             double q) {
    if (cache.mags.empty()) return 0.0;
    const std::size_t points = cache.mags.front().size();
    std::vector<double> aggregate(points, 0.0);
    if (is_inf(q)) {
        for (std::size_t bi = 0; bi < cache.mags.size(); ++bi) {
            const double w = std::pow(2.0, (cache.k0 + static_cast<int>(bi)) * s);
            for (std::size_t i = 0; i < points; ++i)
                aggregate[i] = std::max(aggregate[i], w * cache.mags[bi][i]);
        }
    } else {
        for (std::size_t bi = 0; bi < cache.mags.size(); ++bi) {
            const double w = std::pow(2.0, (cache.k0 + static_cast<int>(bi)) * s);
            for (std::size_t i = 0; i < points; ++i)
                aggregate[i] += std::pow(w * cache.mags[bi][i], q);
        }
        for (double& a : aggregate) a = std::pow(a, 1.0 / q);
    }
    WeightedValueSetBuilder builder;
    for (double a : aggregate) builder.add(a, cache.cell);
    return quasi_norm(builder.build(), LorentzParams{p, r});
}

} // namespace

// --- equivalence brackets -------------------------------------------------------

std::vector<EquivalencePoint> acceptance_equivalence_grid() {
    std::vector<EquivalencePoint> grid;
    for (int M : {1, 2})
        for (double s : {0.3, 0.5, 0.7})
            for (double p : {1.5, 2.0, 3.0})
                for (double gamma : {-2.0, 0.5, 1.0})
                    for (double r : {1.0, p, kInf})
                        grid.push_back({M, s, p, r, gamma});
    return grid;
}

std::vector<BracketRow> equivalence_bracket(const EquivalenceOptions& opts) {
    std::vector<FamilyEntry> entries = standard_family();
    std::vector<std::size_t> subset = opts.family_subset;
    if (subset.empty())
        for (std::size_t i = 0; i < entries.size(); ++i) subset.push_back(i);

    std::vector<FamilyFunction> family(subset.size());
    parallel_for(subset.size(), [&](std::size_t i) {
        family[i] = realize(entries[subset[i]], opts.box, opts.n);
    });
    std::vector<BandCache> caches(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        caches[i] = cache_bands(family[i].samples, opts.bands);

    // Distinct (M, s, p, gamma): the difference-side pushforward is shared by
    // every r.
    struct Combo {
        int M;
        double s, p, gamma;
    };
    std::vector<Combo> combos;
    for (int M : {1, 2})
        for (double s : {0.3, 0.5, 0.7})
            for (double p : {1.5, 2.0, 3.0})
                for (double gamma : {-2.0, 0.5, 1.0}) combos.push_back({M, s, p, gamma});

    struct TaskResult {
        double diff[3]; // r = 1, p, inf
        double fourier[3];
    };
    std::vector<TaskResult> results(family.size() * combos.size());

    parallel_for(results.size(), [&](std::size_t task) {
        const std::size_t fi = task / combos.size();
        const Combo combo = combos[task % combos.size()];
        const FamilyFunction& fn = family[fi];
        const double b = combo.s + combo.gamma / combo.p;

        NuGammaQuadrature quad;
        quad.dim = 1;
        quad.gamma = combo.gamma;
        quad.shell_min = opts.shell_min;
        quad.shell_max = opts.shell_max;
        quad.x_center = 0.5 * opts.box + fn.entry.translation * opts.box;
        quad.support_radius_hint = fn.field.support_radius.value_or(16.0);
        quad.x_half_width =
            quad.support_radius_hint + combo.M * std::ldexp(1.0, opts.shell_max + 1);
        if (opts.refine > 1) quad = quad.refined(opts.refine);

        const WeightedValueSet diff_set =
            difference_pushforward(fn.field, combo.M, b, quad);
        const double rs[3] = {1.0, combo.p, kInf};
        TaskResult res;
        for (int i = 0; i < 3; ++i) {
            res.diff[i] = quasi_norm(diff_set, LorentzParams{combo.p, rs[i]});
            res.fourier[i] =
                script_b_from_cache(caches[fi], combo.s, combo.p, rs[i], combo.gamma);
        }
        results[task] = res;
    });

    std::vector<BracketRow> rows;
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const Combo combo = combos[ci];
        const double rs[3] = {1.0, combo.p, kInf};
        for (int ri = 0; ri < 3; ++ri) {
            BracketRow row;
            row.point = {combo.M, combo.s, combo.p, rs[ri], combo.gamma};
            for (std::size_t fi = 0; fi < family.size(); ++fi) {
                const TaskResult& res = results[fi * combos.size() + ci];
                if (res.fourier[ri] <= 0.0) continue;
                const double ratio = res.diff[ri] / res.fourier[ri];
                if (ratio < row.c_lo) {
                    row.c_lo = ratio;
                    row.argmin = family[fi].entry.name();
                }
                if (ratio > row.c_hi) {
                    row.c_hi = ratio;
                    row.argmax = family[fi].entry.name();
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// --- embedding sweep --------------------------------------------------------------

std::vector<EmbeddingRow> embedding_sweep(const EmbeddingOptions& opts) {
    const std::vector<FamilyEntry> entries = standard_family();
    std::vector<FamilyFunction> family(entries.size());
    parallel_for(entries.size(), [&](std::size_t i) {
        family[i] = realize(entries[i], opts.box, opts.n);
    });
    std::vector<BandCache> caches(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        caches[i] = cache_bands(family[i].samples, opts.bands);

    std::vector<EmbeddingRow> rows;
    for (double p : opts.ps) {
        for (double r : opts.rs) {
            for (double gamma : opts.gammas) {
                const bool p_le_r = p <= r;
                const bool r_le_p = r <= p;
                EmbeddingRow base;
                base.s = opts.s;
                base.p = p;
                base.r = r;
                base.gamma = gamma;
                auto add_direction = [&](const std::string& name, bool enabled,
                                         auto&& num, auto&& den) {
                    if (!enabled) return;
                    EmbeddingRow row = base;
                    row.direction = name;
                    for (std::size_t fi = 0; fi < family.size(); ++fi) {
                        const double denom = den(caches[fi]);
                        if (denom <= 0.0) continue;
                        const double ratio = num(caches[fi]) / denom;
                        if (ratio > row.max_ratio) {
                            row.max_ratio = ratio;
                            row.argmax = family[fi].entry.name();
                        }
                    }
                    rows.push_back(row);
                };
                auto scriptB = [&](const BandCache& c) {
                    return script_b_from_cache(c, opts.s, p, r, gamma);
                };
                auto besovL = [&](const BandCache& c) {
                    return besov_lorentz_from_cache(c, opts.s, p, r, r);
                };
                auto tl = [&](const BandCache& c) {
                    return tl_lorentz_from_cache(c, opts.s, p, p, r);
                };
                // scriptB -> B_r[L^{p,r}] for p <= r; reverse for r <= p.
                add_direction("scriptB->besovLorentz", p_le_r, besovL, scriptB);
                add_direction("besovLorentz->scriptB", r_le_p, scriptB, besovL);
                // F^s_{p,r} -> scriptB for p <= r; reverse for r <= p (gamma != 0).
                add_direction("tl->scriptB", gamma != 0.0 && p_le_r, scriptB, tl);
                add_direction("scriptB->tl", gamma != 0.0 && r_le_p, tl, scriptB);
            }
        }
    }
    return rows;
}

double fubini_collapse_spread(const EmbeddingOptions& opts, double p, double gamma) {
    const std::vector<FamilyEntry> entries = standard_family();
    double worst = 0.0;
    std::vector<double> spreads(entries.size(), 0.0);
    parallel_for(entries.size(), [&](std::size_t i) {
        const FamilyFunction fn = realize(entries[i], opts.box, opts.n);
        const BandCache cache = cache_bands(fn.samples, opts.bands);
        const double a = script_b_from_cache(cache, opts.s, p, p, gamma);
        const double b = besov_lorentz_from_cache(cache, opts.s, p, p, p);
        const double c = tl_lorentz_from_cache(cache, opts.s, p, p, p);
        const double mid = (a + b + c) / 3.0;
        spreads[i] = (std::max({a, b, c}) - std::min({a, b, c})) / mid;
    });
    for (double s : spreads) worst = std::max(worst, s);
    return worst;
}

// --- slope fitting ------------------------------------------------------------------

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& n_value) {
    if (n_value.size() < 2)
        throw validation_error("slope_fit: need at least two points");
    std::vector<double> xs, ys;
    for (const auto& [n, v] : n_value) {
        if (!(n > 0.0) || !(v > 0.0))
            throw validation_error("slope_fit: positive data required for log fit");
        xs.push_back(std::log2(n));
        ys.push_back(std::log2(v));
    }
    const double count = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw validation_error("slope_fit: degenerate abscissae");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double pred = my + fit.slope * (xs[i] - mx);
        ss_res += (ys[i] - pred) * (ys[i] - pred);
    }
    fit.stderr_slope =
        xs.size() > 2 ? std::sqrt(ss_res / (count - 2.0) / sxx) : 0.0;
    return fit;
}

// --- counterexample growth ------------------------------------------------------------

GrowthTable counterexample_growth(double gamma, double s, double p, double r,
                                  double beta, int N_lo, int N_hi) {
    GrowthTable table;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (int N = N_lo; N <= N_hi; ++N) {
        CounterexampleSpec spec;
        spec.gamma = gamma;
        spec.s = s;
        spec.p = p;
        spec.N = N;
        const VirtualFunction F = build_F(spec);

        auto push = [&](const std::string& label, NormFamily family,
                        const BesovParams& params) {
            const VirtualNormResult res = virtual_norm(F, family, params);
            table.rows.push_back({N, label, res.report.value, res.tail_error});
            series[label].emplace_back(static_cast<double>(N), res.report.value);
        };
        BesovParams weak{s, p, kInf, kInf, gamma, true};
        push("scriptB_gamma_weak", NormFamily::ScriptB, weak);
        BesovParams cross{s, p, r, r, beta, true};
        push("scriptB_beta_r", NormFamily::ScriptB, cross);
        BesovParams besov{s, p, p, r, 0.0, true}; // dot-B^s_{p,r} = B_r[L^{p,p}]
        push("besov_p_r", NormFamily::BesovQ, besov);
    }
    table.target_slopes["scriptB_gamma_weak"] = 1.0 / p;
    table.target_slopes["scriptB_beta_r"] = is_inf(r) ? 0.0 : 1.0 / r;
    table.target_slopes["besov_p_r"] = is_inf(r) ? 0.0 : 1.0 / r;
    for (const auto& [label, data] : series) table.slopes[label] = slope_fit(data);
    return table;
}

SampledFunction random_band_limited(double box, int n, int k_lo, int k_hi,
                                    std::uint64_t seed) {
    std::vector<complexd> coeffs(static_cast<std::size_t>(n), 0.0);
    Spectrum spec(1, box, n, std::move(coeffs), "random band-limited");
    const double lo = std::ldexp(1.0, k_lo);
    const double hi = std::ldexp(1.0, k_hi);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const double rho = spec.frequency_radius(i);
        if (rho < lo || rho > hi) continue;
        const double re = uniform(seed, 31, i, -1.0, 1.0);
        const double im = uniform(seed, 32, i, -1.0, 1.0);
        spec[i] = complexd(re, im) / (1.0 + rho);
    }
    return to_samples(spec);
}

} // namespace besovlab
