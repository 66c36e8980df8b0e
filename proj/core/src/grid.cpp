#include "besovlab/grid.hpp"

#include <fftw3.h>

#include <fstream>
#include <map>
#include <mutex>

namespace besovlab {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_lattice(int dim, double box, int n, std::size_t count) {
    if (dim != 1 && dim != 2) throw validation_error("lattice: dim must be 1 or 2");
    if (!(box > 0.0)) throw validation_error("lattice: box length must be positive");
    if (!is_power_of_two(n)) throw validation_error("lattice: n must be a power of two");
    std::size_t expected = static_cast<std::size_t>(n);
    if (dim == 2) expected *= static_cast<std::size_t>(n);
    if (count != expected) throw validation_error("lattice: value count != n^d");
}

// FFTW plans are cached per (dim, n, direction). Planning is serialized;
// fftw_execute_dft on distinct buffers is thread-safe.
struct PlanKey {
    int dim;
    int n;
    int sign;
    bool operator<(const PlanKey& o) const {
        return std::tie(dim, n, sign) < std::tie(o.dim, o.n, o.sign);
    }
};

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan> g_plans;

fftw_plan get_plan(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    PlanKey key{dim, n, sign};
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    std::size_t total = static_cast<std::size_t>(n) * (dim == 2 ? n : 1);
    std::vector<complexd> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan =
        dim == 1 ? fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                 : fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    g_plans.emplace(key, plan);
    return plan;
}

void run_fft(int dim, int n, int sign, std::vector<complexd>& data) {
    fftw_plan plan = get_plan(dim, n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

} // namespace

SampledFunction::SampledFunction(int dim, double box, int n,
                                 std::vector<complexd> values, std::string label)
    : dim_(dim), box_(box), n_(n), values_(std::move(values)), label_(std::move(label)) {
    check_lattice(dim_, box_, n_, values_.size());
    for (const complexd& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw validation_error("SampledFunction: non-finite sample");
}

SampledFunction SampledFunction::zero(int dim, double box, int n, std::string label) {
    std::size_t total = static_cast<std::size_t>(n) * (dim == 2 ? n : 1);
    return SampledFunction(dim, box, n, std::vector<complexd>(total), std::move(label));
}

double SampledFunction::cell_volume() const {
    const double h = box_ / n_;
    return dim_ == 1 ? h : h * h;
}

Point SampledFunction::lattice_point(std::size_t flat) const {
    const double h = box_ / n_;
    if (dim_ == 1) return Point{h * static_cast<double>(flat), 0.0};
    const std::size_t ix = flat / static_cast<std::size_t>(n_);
    const std::size_t iy = flat % static_cast<std::size_t>(n_);
    return Point{h * static_cast<double>(ix), h * static_cast<double>(iy)};
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const complexd& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::l2_norm() const {
    KahanSum s;
    for (const complexd& v : values_) s.add(std::norm(v));
    return std::sqrt(s.value() * cell_volume());
}

Spectrum::Spectrum(int dim, double box, int n, std::vector<complexd> coeffs,
                   std::string label)
    : dim_(dim), box_(box), n_(n), coeffs_(std::move(coeffs)), label_(std::move(label)) {
    check_lattice(dim_, box_, n_, coeffs_.size());
}

int Spectrum::signed_mode(int axis_index) const {
    return axis_index < n_ / 2 ? axis_index : axis_index - n_;
}

std::size_t Spectrum::flat_of_modes(int m0, int m1) const {
    auto wrap = [this](int m) {
        if (m < -n_ / 2 || m >= n_ / 2) throw validation_error("Spectrum: mode out of range");
        return m >= 0 ? m : m + n_;
    };
    if (dim_ == 1) return static_cast<std::size_t>(wrap(m0));
    return static_cast<std::size_t>(wrap(m0)) * n_ + wrap(m1);
}

Point Spectrum::frequency(std::size_t flat) const {
    const double base = 2.0 * kPi / box_;
    if (dim_ == 1) return Point{base * signed_mode(static_cast<int>(flat)), 0.0};
    const int ix = static_cast<int>(flat / static_cast<std::size_t>(n_));
    const int iy = static_cast<int>(flat % static_cast<std::size_t>(n_));
    return Point{base * signed_mode(ix), base * signed_mode(iy)};
}

double Spectrum::frequency_radius(std::size_t flat) const {
    const Point xi = frequency(flat);
    return dim_ == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
}

Spectrum to_spectrum(const SampledFunction& f) {
    std::vector<complexd> data(f.values().begin(), f.values().end());
    run_fft(f.dim(), f.n(), FFTW_FORWARD, data);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (complexd& c : data) c *= scale;
    return Spectrum(f.dim(), f.box(), f.n(), std::move(data), f.label());
}

SampledFunction to_samples(const Spectrum& s) {
    std::vector<complexd> data(s.coeffs().begin(), s.coeffs().end());
    run_fft(s.dim(), s.n(), FFTW_BACKWARD, data);
    return SampledFunction(s.dim(), s.box(), s.n(), std::move(data), s.label());
}

AnalyticField make_field_1d(std::function<complexd(double)> f, int growth_exponent,
                            std::optional<double> support_radius) {
    AnalyticField out;
    out.dim = 1;
    out.growth_exponent = growth_exponent;
    out.support_radius = support_radius;
    out.eval = [fn = std::move(f)](const Point& p) { return fn(p[0]); };
    return out;
}

double growth_bound_ratio(const AnalyticField& f, double bound_constant,
                          double radius, int count, std::uint64_t seed) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        Point x{uniform(seed, 1, i, -radius, radius), 0.0};
        if (f.dim == 2) x[1] = uniform(seed, 2, i, -radius, radius);
        const double r = f.dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
        const double bound =
            bound_constant * std::pow(1.0 + r, static_cast<double>(f.growth_exponent));
        worst = std::max(worst, std::abs(f(x)) / bound);
    }
    return worst;
}

AnalyticField dilate_renormalized(const AnalyticField& f, int n, double s, double p) {
    const double factor = std::pow(2.0, n * (static_cast<double>(f.dim) / p - s));
    const double lambda = std::pow(2.0, n);
    AnalyticField out;
    out.dim = f.dim;
    out.growth_exponent = f.growth_exponent;
    if (f.support_radius) out.support_radius = *f.support_radius / lambda;
    out.eval = [inner = f.eval, factor, lambda](const Point& x) {
        return factor * inner(Point{lambda * x[0], lambda * x[1]});
    };
    return out;
}

AnalyticField translate(const AnalyticField& f, const Point& shift) {
    AnalyticField out = f;
    out.eval = [inner = f.eval, shift](const Point& x) {
        return inner(Point{x[0] - shift[0], x[1] - shift[1]});
    };
    return out;
}

AnalyticField modulate(const AnalyticField& f, double frequency) {
    AnalyticField out = f;
    out.eval = [inner = f.eval, frequency](const Point& x) {
        return std::polar(1.0, frequency * x[0]) * inner(x);
    };
    return out;
}

AnalyticField scale(const AnalyticField& f, complexd c) {
    AnalyticField out = f;
    out.eval = [inner = f.eval, c](const Point& x) { return c * inner(x); };
    return out;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

complexd apply_difference(const AnalyticField& f, const Point& x, const Point& h, int M) {
    complexd acc = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double sign = ((M - j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binomial(M, j) *
               f(Point{x[0] + j * h[0], x[1] + j * h[1]});
    }
    return acc;
}

AnalyticField finite_difference(const AnalyticField& f, const Point& h, int M) {
    if (M < 1) throw validation_error("finite_difference: M must be >= 1");
    AnalyticField out;
    out.dim = f.dim;
    out.growth_exponent = f.growth_exponent;
    if (f.support_radius) {
        const double hr = f.dim == 1 ? std::abs(h[0]) : std::hypot(h[0], h[1]);
        out.support_radius = *f.support_radius + M * hr;
    }
    out.eval = [f, h, M](const Point& x) { return apply_difference(f, x, h, M); };
    return out;
}

SampledFunction sample_field(const AnalyticField& f, double box, int n, std::string label) {
    std::size_t total = static_cast<std::size_t>(n) * (f.dim == 2 ? n : 1);
    std::vector<complexd> values(total);
    const double h = box / n;
    if (f.dim == 1) {
        for (int i = 0; i < n; ++i) values[i] = f(Point{h * i, 0.0});
    } else {
        std::size_t flat = 0;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) values[flat++] = f(Point{h * ix, h * iy});
    }
    return SampledFunction(f.dim, box, n, std::move(values), std::move(label));
}

SampledFunction load_samples_file(const std::string& path, int dim, double box,
                                  std::string label) {
    std::ifstream in(path);
    if (!in) throw validation_error("load_samples_file: cannot open " + path);
    std::vector<complexd> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto parts = split_csv_line(line);
        if (parts.size() != 2)
            throw validation_error("load_samples_file: expected 're,im' per line");
        values.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
    }
    int n = 0;
    if (dim == 1) {
        n = static_cast<int>(values.size());
    } else {
        n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(values.size()))));
    }
    return SampledFunction(dim, box, n, std::move(values), std::move(label));
}

void save_samples_file(const SampledFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw validation_error("save_samples_file: cannot open " + path);
    for (const complexd& v : f.values())
        out << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

} // namespace besovlab
