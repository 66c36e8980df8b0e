#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "besovlab/common.hpp"

namespace besovlab {

using Point = std::array<double, 2>; // second coordinate ignored when dim == 1

// ---------------------------------------------------------------------------
// SampledFunction: uniform complex samples on a periodic box [0, L)^d,
// d in {1, 2}, n samples per axis (power of two), row-major lattice order.
// Lattice points are x_j = j * L / n.
// ---------------------------------------------------------------------------
class SampledFunction {
public:
    SampledFunction(int dim, double box, int n, std::vector<complexd> values,
                    std::string label = {});

    static SampledFunction zero(int dim, double box, int n, std::string label = {});

    int dim() const { return dim_; }
    double box() const { return box_; }
    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }
    const std::string& label() const { return label_; }
    std::span<const complexd> values() const { return values_; }
    std::span<complexd> values() { return values_; }

    double cell_volume() const; // (L/n)^d
    Point lattice_point(std::size_t flat) const;

    complexd& operator[](std::size_t i) { return values_[i]; }
    const complexd& operator[](std::size_t i) const { return values_[i]; }

    double max_abs() const;
    /// Riemann l2 norm: ((L/n)^d sum |f|^2)^{1/2}.
    double l2_norm() const;

private:
    int dim_;
    double box_;
    int n_;
    std::vector<complexd> values_;
    std::string label_;
};

// ---------------------------------------------------------------------------
// Spectrum: discrete Fourier coefficients of a SampledFunction, stored in FFT
// natural order. Flat index k per axis corresponds to the signed mode
// m = k for k < n/2 and m = k - n otherwise; the frequency is (2*pi/L) * m.
// Normalization: a constant function has coefficient 1 at mode 0.
// ---------------------------------------------------------------------------
class Spectrum {
public:
    Spectrum(int dim, double box, int n, std::vector<complexd> coeffs,
             std::string label = {});

    int dim() const { return dim_; }
    double box() const { return box_; }
    int n() const { return n_; }
    std::size_t size() const { return coeffs_.size(); }
    const std::string& label() const { return label_; }
    std::span<const complexd> coeffs() const { return coeffs_; }
    std::span<complexd> coeffs() { return coeffs_; }

    complexd& operator[](std::size_t i) { return coeffs_[i]; }
    const complexd& operator[](std::size_t i) const { return coeffs_[i]; }

    int signed_mode(int axis_index) const;      // k -> m
    std::size_t flat_of_modes(int m0, int m1 = 0) const;
    Point frequency(std::size_t flat) const;    // (2 pi / L) * m per axis
    double frequency_radius(std::size_t flat) const;
    double nyquist() const { return kPi * n_ / box_; }

private:
    int dim_;
    double box_;
    int n_;
    std::vector<complexd> coeffs_;
    std::string label_;
};

Spectrum to_spectrum(const SampledFunction& f);
SampledFunction to_samples(const Spectrum& s);

// ---------------------------------------------------------------------------
// AnalyticField: lazily evaluated x -> C with a declared tempered-growth
// exponent, the physical-side representation used by difference quadrature.
// ---------------------------------------------------------------------------
struct AnalyticField {
    int dim = 1;
    int growth_exponent = 0;                       // |f(x)| <= C (1+|x|)^N
    std::optional<double> support_radius{};        // effective support hint
    std::function<complexd(const Point&)> eval;

    complexd operator()(double x) const { return eval(Point{x, 0.0}); }
    complexd operator()(double x, double y) const { return eval(Point{x, y}); }
    complexd operator()(const Point& p) const { return eval(p); }
};

AnalyticField make_field_1d(std::function<complexd(double)> f, int growth_exponent = 0,
                            std::optional<double> support_radius = {});

/// Spot-check |f(x)| <= C (1+|x|)^N on `count` seeded random points in
/// [-radius, radius]^d; returns the worst ratio |f| / (C (1+|x|)^N).
double growth_bound_ratio(const AnalyticField& f, double bound_constant,
                          double radius, int count, std::uint64_t seed);

/// 2^{n (d/p - s)} f(2^n x): the renormalized dyadic dilation under which the
/// Besov-type quasi-norms with the same (s, p) are invariant.
AnalyticField dilate_renormalized(const AnalyticField& f, int n, double s, double p);

AnalyticField translate(const AnalyticField& f, const Point& shift);
AnalyticField modulate(const AnalyticField& f, double frequency); // e^{i freq x_1} f
AnalyticField scale(const AnalyticField& f, complexd c);

/// M-th forward difference Delta_h^M f as a new evaluation rule,
/// sum_{j=0}^{M} (-1)^{M-j} C(M,j) f(x + j h). Annihilates polynomials of
/// degree < M.
AnalyticField finite_difference(const AnalyticField& f, const Point& h, int M);

/// Evaluate Delta_h^M f at one point without building a field.
complexd apply_difference(const AnalyticField& f, const Point& x, const Point& h, int M);

double binomial(int n, int k);

/// Sample an AnalyticField on the lattice of a periodic box.
SampledFunction sample_field(const AnalyticField& f, double box, int n,
                             std::string label = {});

/// Column-file fixture format: one "re,im" pair per line, lattice implied.
SampledFunction load_samples_file(const std::string& path, int dim, double box,
                                  std::string label = {});
void save_samples_file(const SampledFunction& f, const std::string& path);

} // namespace besovlab
