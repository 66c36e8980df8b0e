#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <algorithm>
#include <vector>

#include "besovlab/wavelets.hpp"

namespace besovlab::testing {

/// Exhaustive best-subset n-term error: minimum L^q remainder over all
/// coefficient subsets of size <= n (analysis coefficients kept). Exponential
/// in the number of nonzero coefficients; use only for small trees.
inline std::vector<double> exhaustive_sigma_table(const WaveletCoeffTree& tree,
                                                  const WaveletBasis& basis, double q,
                                                  std::size_t n_max) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < tree.entries().size(); ++i)
        if (std::abs(tree.entries()[i].c) > 0.0) nz.push_back(i);
    if (nz.size() > 16) throw std::runtime_error("exhaustive oracle: tree too large");

    const SampledFunction full = synthesize(tree, basis);
    // Grid representation of each nonzero coefficient's basis vector.
    std::vector<std::vector<complexd>> atoms;
    for (std::size_t idx : nz) {
        WaveletCoeffTree unit = tree;
        for (auto& e : unit.entries()) e.c = 0.0;
        unit.entries()[idx].c = tree.entries()[idx].c;
        const SampledFunction g = synthesize(unit, basis);
        atoms.emplace_back(g.values().begin(), g.values().end());
    }

    std::vector<double> best(n_max + 1, kInf);
    std::vector<complexd> remainder(full.size());
    const std::size_t subsets = static_cast<std::size_t>(1) << nz.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        const int bits = __builtin_popcountll(mask);
        if (static_cast<std::size_t>(bits) > n_max) continue;
        for (std::size_t i = 0; i < full.size(); ++i) remainder[i] = full[i];
        for (std::size_t b = 0; b < nz.size(); ++b)
            if (mask & (static_cast<std::size_t>(1) << b))
                for (std::size_t i = 0; i < full.size(); ++i)
                    remainder[i] -= atoms[b][i];
        KahanSum acc;
        for (const complexd& v : remainder) acc.add(std::pow(std::abs(v), q));
        const double err = std::pow(acc.value() * full.cell_volume(), 1.0 / q);
        for (std::size_t n = bits; n <= n_max; ++n) best[n] = std::min(best[n], err);
    }
    return best;
}

/// Tail-sum decay oracle for greedy n-term errors of a weak-l^tau profile:
/// sigma_n ~ (sum_{k>n} w_k^q)^{1/q} when the selected wavelets are nearly
/// L^q-disjoint. Returns the predicted decay sequence up to a constant.
inline std::vector<double> tail_sum_sigma(const std::vector<double>& sorted_weights,
                                          double q, std::size_t n_max) {
    std::vector<double> sigma(n_max + 1, 0.0);
    std::vector<double> suffix(sorted_weights.size() + 1, 0.0);
    for (std::size_t i = sorted_weights.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + std::pow(sorted_weights[i], q);
    for (std::size_t n = 0; n <= n_max; ++n)
        sigma[n] = std::pow(n < suffix.size() ? suffix[n] : 0.0, 1.0 / q);
    return sigma;
}

} // namespace besovlab::testing
