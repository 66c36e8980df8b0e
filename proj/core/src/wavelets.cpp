#include "besovlab/wavelets.hpp"

#include "besovlab/differences.hpp"

#include <algorithm>
#include <json.hpp>

namespace besovlab {

namespace {

// Orthonormal Daubechies scaling filters, sum h = sqrt(2), u = 2..6.
const std::vector<double>& daubechies_filter(int u) {
    static const std::vector<std::vector<double>> filters = {
        // db2
        {0.482962913144690, 0.836516303737469, 0.224143868041857, -0.129409522550921},
        // db3
        {0.332670552950957, 0.806891509313339, 0.459877502119331, -0.135011020010391,
         -0.085441273882241, 0.035226291882101},
        // db4
        {0.230377813308855, 0.714846570552542, 0.630880767929590, -0.027983769416984,
         -0.187034811718881, 0.030841381835987, 0.032883011666983, -0.010597401784997},
        // db5
        {0.160102397974125, 0.603829269797473, 0.724308528438574, 0.138428145901103,
         -0.242294887066190, -0.032244869585030, 0.077571493840065, -0.006241490213012,
         -0.012580751999016, 0.003335725285002},
        // db6
        {0.111540743350080, 0.494623890398385, 0.751133908021578, 0.315250351709243,
         -0.226264693965169, -0.129766867567096, 0.097501605587079, 0.027522865530016,
         -0.031582039318031, 0.000553842200994, 0.004777257511011, -0.001077301085308},
    };
    if (u < 2 || u > 6)
        throw validation_error("WaveletBasis: vanishing moments must be in {2,...,6}");
    return filters[u - 2];
}

} // namespace

WaveletBasis::WaveletBasis(int vanishing_moments) : u_(vanishing_moments) {
    lowpass_ = daubechies_filter(u_);
    const int len = filter_length();
    highpass_.resize(len);
    for (int j = 0; j < len; ++j)
        highpass_[j] = (j % 2 == 0 ? 1.0 : -1.0) * lowpass_[len - 1 - j];

    // Integer values of phi: the partition-of-unity eigenvector of the
    // two-scale matrix, then exact dyadic refinement.
    const double sqrt2 = std::sqrt(2.0);
    std::vector<double> ints(len, 0.0); // phi at x = 0..len-1; endpoints zero

    for (int i = 1; i < len - 1; ++i) ints[i] = 1.0 / (len - 2);
    for (int it = 0; it < 400; ++it) {
        std::vector<double> next(len, 0.0);
        for (int i = 0; i < len; ++i) {
            double acc = 0.0;
            for (int j = 0; j < len; ++j) {
                const int arg = 2 * i - j;
                if (arg >= 0 && arg < len) acc += lowpass_[j] * ints[arg];
            }
            next[i] = sqrt2 * acc;
        }
        double sum = 0.0;
        for (double x : next) sum += x;
        for (double& x : next) x /= sum;
        ints.swap(next);
    }

    // Refinement to resolution 2^-table_depth_ on [0, len-1]. A fine point
    // x = i / (2 ppu) either sits on the coarse grid or is filled from the
    // two-scale relation: 2x - j has coarse index i - j * ppu.
    std::vector<double> table = ints;
    long ppu = 1; // coarse points per unit
    for (int depth = 1; depth <= table_depth_; ++depth) {
        std::vector<double> fine(static_cast<std::size_t>((len - 1) * 2 * ppu + 1), 0.0);
        for (std::size_t i = 0; i < fine.size(); ++i) {
            if (i % 2 == 0) {
                fine[i] = table[i / 2];
                continue;
            }
            double acc = 0.0;
            for (int j = 0; j < len; ++j) {
                const long arg = static_cast<long>(i) - static_cast<long>(j) * ppu;
                if (arg >= 0 && arg < static_cast<long>(table.size()))
                    acc += lowpass_[j] * table[static_cast<std::size_t>(arg)];
            }
            fine[i] = sqrt2 * acc;
        }
        table.swap(fine);
        ppu *= 2;
    }
    phi_table_ = std::move(table);
}

double WaveletBasis::phi_value(double x) const {
    const int len = filter_length();
    if (x <= 0.0 || x >= len - 1) return 0.0;
    const double res = std::ldexp(1.0, table_depth_);
    const double pos = x * res;
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= phi_table_.size()) return 0.0;
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * phi_table_[i] + t * phi_table_[i + 1];
}

double WaveletBasis::psi_support_lo() const { return (2.0 - filter_length()) / 2.0; }
double WaveletBasis::psi_support_hi() const { return filter_length() / 2.0; }

double WaveletBasis::psi_value(double x) const {
    // psi(x) = sqrt(2) sum_j g_j phi(2x - j).
    const int len = filter_length();
    if (x <= psi_support_lo() || x >= psi_support_hi()) return 0.0;
    double acc = 0.0;
    for (int j = 0; j < len; ++j) acc += highpass_[j] * phi_value(2.0 * x - j);
    return std::sqrt(2.0) * acc;
}

// --- periodized filter bank --------------------------------------------------

namespace {

void analysis_step(const WaveletBasis& basis, std::span<const complexd> s,
                   std::span<complexd> approx, std::span<complexd> detail) {
    const auto m = static_cast<long>(s.size());
    const auto& h = basis.lowpass();
    const auto& g = basis.highpass();
    const int len = basis.filter_length();
    for (long k = 0; k < m / 2; ++k) {
        complexd a = 0.0, d = 0.0;
        for (int j = 0; j < len; ++j) {
            const complexd v = s[static_cast<std::size_t>((2 * k + j) % m)];
            a += h[j] * v;
            d += g[j] * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

void synthesis_step(const WaveletBasis& basis, std::span<const complexd> approx,
                    std::span<const complexd> detail, std::span<complexd> s) {
    const auto m = static_cast<long>(s.size());
    const auto& h = basis.lowpass();
    const auto& g = basis.highpass();
    const int len = basis.filter_length();
    std::fill(s.begin(), s.end(), complexd(0.0));
    for (long k = 0; k < m / 2; ++k) {
        for (int j = 0; j < len; ++j) {
            const auto i = static_cast<std::size_t>((2 * k + j) % m);
            s[i] += h[j] * approx[k] + g[j] * detail[k];
        }
    }
}

int int_log2(int n) {
    int j = 0;
    while ((1 << j) < n) ++j;
    return j;
}

} // namespace

WaveletCoeffTree::WaveletCoeffTree(int dim, double box, int n, int level0,
                                   int vanishing_moments)
    : dim_(dim), box_(box), n_(n), level0_(level0), u_(vanishing_moments) {}

int WaveletCoeffTree::finest_level() const { return int_log2(n_); }

std::size_t WaveletCoeffTree::nonzero_count(double tol) const {
    std::size_t count = 0;
    for (const auto& e : entries_)
        if (std::abs(e.c) > tol) ++count;
    return count;
}

double WaveletCoeffTree::q_weight(const WaveletEntry& entry, double q) const {
    const double j_phys = entry.level - std::log2(box_);
    return std::abs(entry.c) *
           std::pow(2.0, j_phys * dim_ * (0.5 - 1.0 / q));
}

std::string WaveletCoeffTree::to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim_;
    j["box"] = box_;
    j["n"] = n_;
    j["level0"] = level0_;
    j["u"] = u_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : entries_) {
        arr.push_back({{"e", e.e},
                       {"j", e.level},
                       {"m", e.m},
                       {"re", e.c.real()},
                       {"im", e.c.imag()}});
    }
    j["coefficients"] = arr;
    return j.dump();
}

WaveletCoeffTree WaveletCoeffTree::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    WaveletCoeffTree tree(j.at("dim").get<int>(), j.at("box").get<double>(),
                          j.at("n").get<int>(), j.at("level0").get<int>(),
                          j.at("u").get<int>());
    for (const auto& item : j.at("coefficients")) {
        WaveletEntry e;
        e.e = item.at("e").get<int>();
        e.level = item.at("j").get<int>();
        e.m = item.at("m").get<long>();
        e.c = complexd(item.at("re").get<double>(), item.at("im").get<double>());
        tree.entries_.push_back(e);
    }
    return tree;
}

WaveletCoeffTree analyze(const SampledFunction& f, const WaveletBasis& basis,
                         int level0) {
    const int J = int_log2(f.n());
    if (level0 < 0 || level0 >= J)
        throw validation_error("analyze: level range does not fit the grid");
    WaveletCoeffTree tree(f.dim(), f.box(), f.n(), level0, basis.vanishing_moments());
    const double root_cell = std::sqrt(f.cell_volume());

    if (f.dim() == 1) {
        std::vector<complexd> s(f.values().begin(), f.values().end());
        for (complexd& v : s) v *= root_cell;
        std::vector<std::vector<complexd>> details;
        for (int level = J; level > level0; --level) {
            const long m = 1L << level;
            std::vector<complexd> approx(m / 2), detail(m / 2);
            analysis_step(basis, std::span<const complexd>(s.data(), m), approx, detail);
            details.push_back(std::move(detail));
            s.assign(approx.begin(), approx.end());
        }
        for (long m = 0; m < (1L << level0); ++m)
            tree.entries().push_back({0, level0, m, s[static_cast<std::size_t>(m)]});
        for (int level = level0; level < J; ++level) {
            const auto& d = details[static_cast<std::size_t>(J - 1 - level)];
            for (long m = 0; m < static_cast<long>(d.size()); ++m)
                tree.entries().push_back({1, level, m, d[static_cast<std::size_t>(m)]});
        }
        return tree;
    }

    // d = 2: separable transform, blocks LL | e1 (low-high) | e2 | e3.
    const int n = f.n();
    std::vector<complexd> a(f.values().begin(), f.values().end());
    for (complexd& v : a) v *= root_cell;
    auto at = [n](std::vector<complexd>& buf, long i, long j) -> complexd& {
        return buf[static_cast<std::size_t>(i) * n + j];
    };
    struct LevelBlocks {
        std::vector<complexd> e1, e2, e3;
        long m;
    };
    std::vector<LevelBlocks> blocks;
    long m = n;
    while (m > (1L << level0)) {
        std::vector<complexd> row(m), ra(m / 2), rd(m / 2);
        // rows
        for (long i = 0; i < m; ++i) {
            for (long j = 0; j < m; ++j) row[j] = at(a, i, j);
            analysis_step(basis, std::span<const complexd>(row.data(), m), ra, rd);
            for (long j = 0; j < m / 2; ++j) {
                at(a, i, j) = ra[j];
                at(a, i, j + m / 2) = rd[j];
            }
        }
        // columns
        for (long j = 0; j < m; ++j) {
            for (long i = 0; i < m; ++i) row[i] = at(a, i, j);
            analysis_step(basis, std::span<const complexd>(row.data(), m), ra, rd);
            for (long i = 0; i < m / 2; ++i) {
                at(a, i, j) = ra[i];
                at(a, i + m / 2, j) = rd[i];
            }
        }
        LevelBlocks lb;
        lb.m = m / 2;
        lb.e1.resize(static_cast<std::size_t>(lb.m) * lb.m);
        lb.e2.resize(lb.e1.size());
        lb.e3.resize(lb.e1.size());
        for (long i = 0; i < lb.m; ++i)
            for (long j = 0; j < lb.m; ++j) {
                lb.e1[static_cast<std::size_t>(i) * lb.m + j] = at(a, i, j + lb.m);
                lb.e2[static_cast<std::size_t>(i) * lb.m + j] = at(a, i + lb.m, j);
                lb.e3[static_cast<std::size_t>(i) * lb.m + j] =
                    at(a, i + lb.m, j + lb.m);
            }
        blocks.push_back(std::move(lb));
        m /= 2;
    }
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < m; ++j)
            tree.entries().push_back({0, level0, i * m + j, at(a, i, j)});
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        const int level = int_log2(static_cast<int>(it->m));
        auto push = [&](int e, const std::vector<complexd>& block) {
            for (long idx = 0; idx < static_cast<long>(block.size()); ++idx)
                tree.entries().push_back(
                    {e, level, idx, block[static_cast<std::size_t>(idx)]});
        };
        push(1, it->e1);
        push(2, it->e2);
        push(3, it->e3);
    }
    return tree;
}

SampledFunction synthesize(const WaveletCoeffTree& tree, const WaveletBasis& basis) {
    const int J = tree.finest_level();
    const int level0 = tree.level0();
    const double root_cell =
        std::sqrt(tree.dim() == 1 ? tree.box() / tree.n()
                                  : (tree.box() / tree.n()) * (tree.box() / tree.n()));

    if (tree.dim() == 1) {
        std::vector<complexd> s(static_cast<std::size_t>(1) << level0, 0.0);
        std::vector<std::vector<complexd>> details(static_cast<std::size_t>(J - level0));
        for (int level = level0; level < J; ++level)
            details[static_cast<std::size_t>(level - level0)]
                .resize(static_cast<std::size_t>(1) << level, 0.0);
        for (const auto& e : tree.entries()) {
            if (e.e == 0)
                s[static_cast<std::size_t>(e.m)] = e.c;
            else
                details[static_cast<std::size_t>(e.level - level0)]
                       [static_cast<std::size_t>(e.m)] = e.c;
        }
        for (int level = level0; level < J; ++level) {
            const long m = 1L << (level + 1);
            std::vector<complexd> next(static_cast<std::size_t>(m));
            synthesis_step(basis, s, details[static_cast<std::size_t>(level - level0)],
                           next);
            s.swap(next);
        }
        for (complexd& v : s) v /= root_cell;
        return SampledFunction(tree.dim(), tree.box(), tree.n(), std::move(s), "synth");
    }

    // d = 2
    const int n = tree.n();
    std::vector<complexd> a(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [n](std::vector<complexd>& buf, long i, long j) -> complexd& {
        return buf[static_cast<std::size_t>(i) * n + j];
    };
    // Place coefficients into the nested block layout.
    for (const auto& e : tree.entries()) {
        const long m = 1L << e.level;
        const long i = e.m / m, j = e.m % m;
        if (e.e == 0)
            at(a, i, j) = e.c;
        else if (e.e == 1)
            at(a, i, j + m) = e.c;
        else if (e.e == 2)
            at(a, i + m, j) = e.c;
        else
            at(a, i + m, j + m) = e.c;
    }
    for (long m = 1L << level0; m < n; m *= 2) {
        std::vector<complexd> col(2 * m), ra(m), rd(m), out(2 * m);
        // columns first (inverse of analysis order)
        for (long j = 0; j < 2 * m; ++j) {
            for (long i = 0; i < m; ++i) {
                ra[i] = at(a, i, j);
                rd[i] = at(a, i + m, j);
            }
            synthesis_step(basis, ra, rd, out);
            for (long i = 0; i < 2 * m; ++i) at(a, i, j) = out[i];
        }
        for (long i = 0; i < 2 * m; ++i) {
            for (long j = 0; j < m; ++j) {
                ra[j] = at(a, i, j);
                rd[j] = at(a, i, j + m);
            }
            synthesis_step(basis, ra, rd, out);
            for (long j = 0; j < 2 * m; ++j) at(a, i, j) = out[j];
        }
    }
    for (complexd& v : a) v /= root_cell;
    return SampledFunction(tree.dim(), tree.box(), tree.n(), std::move(a), "synth");
}

double grid_lq_norm(const SampledFunction& g, double q) {
    KahanSum s;
    for (const complexd& v : g.values()) s.add(std::pow(std::abs(v), q));
    return std::pow(s.value() * g.cell_volume(), 1.0 / q);
}

namespace {

std::vector<std::size_t> greedy_order(const WaveletCoeffTree& tree, double q) {
    std::vector<std::size_t> order(tree.entries().size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return tree.q_weight(tree.entries()[a], q) >
               tree.q_weight(tree.entries()[b], q);
    });
    return order;
}

} // namespace

std::vector<double> greedy_sigma_table(const WaveletCoeffTree& tree,
                                       const WaveletBasis& basis, double q,
                                       std::size_t n_max) {
    if (!(q > 1.0) || is_inf(q))
        throw validation_error("greedy_sigma: need 1 < q < inf");
    const SampledFunction full = synthesize(tree, basis);
    const std::vector<std::size_t> order = greedy_order(tree, q);
    const std::size_t nonzero = tree.nonzero_count();
    std::vector<double> sigma;
    sigma.reserve(n_max + 1);
    WaveletCoeffTree kept = tree;
    for (auto& e : kept.entries()) e.c = 0.0;
    SampledFunction kept_grid = SampledFunction::zero(tree.dim(), tree.box(), tree.n());
    sigma.push_back(grid_lq_norm(full, q)); // sigma_0
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n <= order.size() && n <= nonzero) {
            kept.entries()[order[n - 1]].c = tree.entries()[order[n - 1]].c;
            kept_grid = synthesize(kept, basis);
        }
        if (n > nonzero) {
            sigma.push_back(0.0);
            continue;
        }
        SampledFunction rem = full;
        for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= kept_grid[i];
        sigma.push_back(grid_lq_norm(rem, q));
    }
    return sigma;
}

double greedy_sigma_n(const WaveletCoeffTree& tree, const WaveletBasis& basis,
                      double q, std::size_t n) {
    return greedy_sigma_table(tree, basis, q, n).back();
}

ApproxSpaceNorm approx_space_norm(const WaveletCoeffTree& tree, const WaveletBasis& basis,
                                  double q, double alpha, double r, std::size_t n_max) {
    if (!(alpha > 0.0)) throw validation_error("approx_space_norm: alpha must be > 0");
    const std::vector<double> sigma = greedy_sigma_table(tree, basis, q, n_max);
    ApproxSpaceNorm out;
    out.n_max = n_max;
    if (is_inf(r)) {
        for (std::size_t n = 1; n <= n_max; ++n)
            out.value = std::max(out.value,
                                 std::pow(static_cast<double>(n), alpha) * sigma[n]);
    } else {
        KahanSum acc;
        for (std::size_t n = 1; n <= n_max; ++n)
            acc.add(std::pow(std::pow(static_cast<double>(n), alpha) * sigma[n], r) /
                    static_cast<double>(n));
        out.value = std::pow(acc.value(), 1.0 / r);
    }
    return out;
}

AnalyticField wavelet_sum_field(const WaveletCoeffTree& tree, const WaveletBasis& basis) {
    if (tree.dim() != 1)
        throw validation_error("wavelet_sum_field: d = 1 only");
    struct Term {
        int e;
        double scale;   // 2^level
        double m;
        complexd c;
        double norm;    // (2^level / L)^{1/2}
    };
    auto terms = std::make_shared<std::vector<Term>>();
    const double L = tree.box();
    for (const auto& e : tree.entries()) {
        if (std::abs(e.c) == 0.0) continue;
        const double scale = std::ldexp(1.0, e.level);
        terms->push_back({e.e, scale, static_cast<double>(e.m), e.c,
                          std::sqrt(scale / L)});
    }
    // Keep a copy of the basis; it is cheap (two filters + one table).
    auto basis_copy = std::make_shared<WaveletBasis>(basis);
    AnalyticField out;
    out.dim = 1;
    out.growth_exponent = 0;
    out.support_radius = L;
    out.eval = [terms, basis_copy, L](const Point& p) {
        complexd acc = 0.0;
        for (const Term& t : *terms) {
            // periodized coordinate with one wrap each way
            for (int wrap = -1; wrap <= 1; ++wrap) {
                const double u = t.scale * ((p[0] + wrap * L) / L) - t.m;
                const double v = t.e == 0 ? basis_copy->phi_value(u)
                                          : basis_copy->psi_value(u);
                if (v != 0.0) acc += t.c * t.norm * v;
            }
        }
        return acc;
    };
    return out;
}

WaveletCoeffTree prescribed_decay_tree(double box, int n, int level0,
                                       const WaveletBasis& basis, int level_lo,
                                       int level_hi, int count, double tau, double q,
                                       std::uint64_t seed) {
    if (level_lo < level0 || (1 << level_hi) > n)
        throw validation_error("prescribed_decay_tree: level range does not fit");
    WaveletCoeffTree tree = analyze(SampledFunction::zero(1, box, n), basis, level0);
    // Index the available interior detail slots per level.
    std::vector<std::size_t> slots;
    const double margin_lo = 0.15, margin_hi = 0.85;
    for (std::size_t i = 0; i < tree.entries().size(); ++i) {
        const WaveletEntry& e = tree.entries()[i];
        if (e.e == 0 || e.level < level_lo || e.level > level_hi) continue;
        const double pos = static_cast<double>(e.m) / std::ldexp(1.0, e.level);
        if (pos < margin_lo || pos > margin_hi) continue;
        slots.push_back(i);
    }
    if (slots.size() < static_cast<std::size_t>(count))
        throw validation_error("prescribed_decay_tree: not enough interior slots");
    // Seeded draw without replacement.
    std::vector<std::size_t> chosen;
    std::uint64_t counter = 0;
    while (chosen.size() < static_cast<std::size_t>(count)) {
        const std::size_t pick = static_cast<std::size_t>(
            uniform01(seed, 41, counter++) * static_cast<double>(slots.size()));
        const std::size_t slot = slots[std::min(pick, slots.size() - 1)];
        if (std::find(chosen.begin(), chosen.end(), slot) == chosen.end())
            chosen.push_back(slot);
    }
    for (int k = 0; k < count; ++k) {
        WaveletEntry& e = tree.entries()[chosen[static_cast<std::size_t>(k)]];
        const double weight = std::pow(static_cast<double>(k + 1), -1.0 / tau);
        const double j_phys = e.level - std::log2(box);
        const double mag = weight / std::pow(2.0, j_phys * (0.5 - 1.0 / q));
        const double sign = uniform01(seed, 42, k) < 0.5 ? -1.0 : 1.0;
        e.c = complexd(sign * mag, 0.0);
    }
    return tree;
}

ComparisonReport approximation_vs_difference(const WaveletCoeffTree& tree,
                                             const WaveletBasis& basis, double q,
                                             double alpha, int M, std::size_t n_max) {
    if (!(q > 1.0) || is_inf(q))
        throw validation_error("approximation_vs_difference: need 1 < q < inf");
    if (!(alpha > 0.0 && alpha < 1.0 - 1.0 / q))
        throw validation_error("approximation_vs_difference: need 0 < alpha < 1 - 1/q");
    if (!(M > alpha)) // d = 1
        throw validation_error("approximation_vs_difference: need M > alpha d");
    ComparisonReport report;
    report.lhs = approx_space_norm(tree, basis, q, alpha, kInf, n_max).value;

    const double p = 1.0 / (1.0 / q + alpha);
    const double b = -1.0 / q; // -d/q
    AnalyticField f = wavelet_sum_field(tree, basis);
    NuGammaQuadrature quad = NuGammaQuadrature::auto_for(f, -1.0, M, -14, 2);
    quad.x_spacing = tree.box() / tree.n();
    quad.x_center = 0.5 * tree.box();
    quad.x_half_width = tree.box();
    const WeightedValueSet set = difference_pushforward(f, M, b, quad);
    report.rhs = weak_norm(set, p);
    return report;
}

} // namespace besovlab
