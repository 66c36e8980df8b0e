#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace besovlab {

using complexd = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

inline bool is_inf(double x) { return std::isinf(x); }

/// Thrown when inputs violate a documented precondition.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a dyadic band does not fit on the sampling lattice.
class band_out_of_range : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a quadrature self-check reports an under-resolved mesh.
class quadrature_unresolved : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Compensated (Kahan) accumulation. All Lorentz-side reductions use this so
// that exact identities (r = p Fubini collapse, homogeneity) survive large
// pushforward sets at the 1e-12 level.
// ---------------------------------------------------------------------------
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// ---------------------------------------------------------------------------
// Counter-based RNG: a pure function of (seed, stream, counter). Parallel
// sampling is schedule-independent by construction.
// ---------------------------------------------------------------------------
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) {
    return mix64(mix64(seed ^ (stream * 0xd1342543de82ef95ull)) ^ counter);
}

/// Uniform double in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
    return static_cast<double>(counter_rng(seed, stream, counter) >> 11) *
           0x1.0p-53;
}

/// Uniform double in [a, b).
inline double uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t counter, double a, double b) {
    return a + (b - a) * uniform01(seed, stream, counter);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre recurrence.
// ---------------------------------------------------------------------------
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const QuadRule& gauss_legendre(int order);

/// Integrate f over [a, b] with a single Gauss-Legendre panel.
template <typename F>
double gl_integrate(F&& f, double a, double b, int order) {
    const QuadRule& q = gauss_legendre(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    KahanSum s;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        s.add(q.weights[i] * f(mid + half * q.nodes[i]));
    return s.value() * half;
}

// ---------------------------------------------------------------------------
// Deterministic parallel loop: indices are partitioned statically, results
// must be written to per-index slots by the caller.
// ---------------------------------------------------------------------------
int worker_count();
void set_worker_count(int n); // 0 restores the hardware default
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Small text helpers shared by the CSV/JSON writers. Doubles are printed
// with round-trip precision so identical runs produce byte-identical files.
std::string format_double(double x);
std::vector<std::string> split_csv_line(const std::string& line);

} // namespace besovlab
