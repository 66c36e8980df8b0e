#include "besovlab/differences.hpp"

#include <json.hpp>

namespace besovlab {

void NuGammaQuadrature::validate() const {
    if (dim != 1 && dim != 2) throw validation_error("NuGammaQuadrature: dim must be 1 or 2");
    if (shell_min > shell_max) throw validation_error("NuGammaQuadrature: empty shell range");
    if (radial_order < 2) throw validation_error("NuGammaQuadrature: radial_order < 2");
    if (dim == 2 && angular_count < 4)
        throw validation_error("NuGammaQuadrature: angular_count < 4");
    if (x_kind == XKind::Lattice) {
        if (!(x_spacing > 0.0) || !(x_half_width > 0.0))
            throw validation_error("NuGammaQuadrature: bad x lattice");
    } else {
        if (dim != 2) throw validation_error("NuGammaQuadrature: Monte-Carlo x is d=2 only");
        if (mc_count == 0) throw validation_error("NuGammaQuadrature: mc_count == 0");
    }
}

std::string NuGammaQuadrature::to_json() const {
    nlohmann::ordered_json j;
    j["dim"] = dim;
    j["gamma"] = gamma;
    j["shell_min"] = shell_min;
    j["shell_max"] = shell_max;
    j["radial_order"] = radial_order;
    j["angular_count"] = angular_count;
    j["x_kind"] = x_kind == XKind::Lattice ? "lattice" : "monte_carlo";
    j["x_center"] = x_center;
    j["x_half_width"] = x_half_width;
    j["x_spacing"] = x_spacing;
    j["mc_count"] = mc_count;
    j["seed"] = seed;
    j["restrict_x_per_shell"] = restrict_x_per_shell;
    j["support_radius_hint"] = support_radius_hint;
    return j.dump();
}

NuGammaQuadrature NuGammaQuadrature::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    NuGammaQuadrature q;
    q.dim = j.at("dim").get<int>();
    q.gamma = j.at("gamma").get<double>();
    q.shell_min = j.at("shell_min").get<int>();
    q.shell_max = j.at("shell_max").get<int>();
    q.radial_order = j.at("radial_order").get<int>();
    q.angular_count = j.at("angular_count").get<int>();
    q.x_kind = j.at("x_kind").get<std::string>() == "lattice" ? XKind::Lattice
                                                              : XKind::MonteCarlo;
    q.x_center = j.at("x_center").get<double>();
    q.x_half_width = j.at("x_half_width").get<double>();
    q.x_spacing = j.at("x_spacing").get<double>();
    q.mc_count = j.at("mc_count").get<std::size_t>();
    q.seed = j.at("seed").get<std::uint64_t>();
    q.restrict_x_per_shell = j.at("restrict_x_per_shell").get<bool>();
    q.support_radius_hint = j.at("support_radius_hint").get<double>();
    q.validate();
    return q;
}

NuGammaQuadrature NuGammaQuadrature::auto_for(const AnalyticField& f, double gamma,
                                              int M, int shell_min, int shell_max) {
    NuGammaQuadrature q;
    q.dim = f.dim;
    q.gamma = gamma;
    q.shell_min = shell_min;
    q.shell_max = shell_max;
    const double support = f.support_radius.value_or(8.0);
    q.x_half_width = support + M * std::ldexp(1.0, shell_max + 1);
    q.x_spacing = 1.0 / 16.0;
    if (f.dim == 2) {
        q.x_kind = XKind::MonteCarlo;
        q.mc_count = 1 << 16;
    }
    return q;
}

NuGammaQuadrature NuGammaQuadrature::refined(int factor) const {
    NuGammaQuadrature q = *this;
    q.radial_order *= factor;
    q.angular_count *= factor;
    q.x_spacing /= factor;
    q.mc_count *= static_cast<std::size_t>(factor) * factor;
    return q;
}

std::vector<HNode> h_nodes(const NuGammaQuadrature& q) {
    q.validate();
    const QuadRule& rule = gauss_legendre(q.radial_order);
    // Reference radial nodes on [1, 2] carrying rho^{gamma-1} d rho.
    std::vector<std::pair<double, double>> ref(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double rho = 1.5 + 0.5 * rule.nodes[i];
        const double w = 0.5 * rule.weights[i] * std::pow(rho, q.gamma - 1.0);
        ref[i] = {rho, w};
    }
    std::vector<HNode> nodes;
    for (int j = q.shell_min; j <= q.shell_max; ++j) {
        const double scale = std::ldexp(1.0, j);
        const double shell_weight = std::pow(scale, q.gamma);
        for (const auto& [rho, w] : ref) {
            const double radius = scale * rho;
            const double weight = shell_weight * w;
            if (q.dim == 1) {
                nodes.push_back({Point{radius, 0.0}, weight, radius});
                nodes.push_back({Point{-radius, 0.0}, weight, radius});
            } else {
                const double ang_weight = 2.0 * kPi / q.angular_count;
                for (int a = 0; a < q.angular_count; ++a) {
                    const double theta = 2.0 * kPi * (a + 0.5) / q.angular_count;
                    nodes.push_back({Point{radius * std::cos(theta),
                                           radius * std::sin(theta)},
                                     weight * ang_weight, radius});
                }
            }
        }
    }
    return nodes;
}

complexd DifferenceField::operator()(const Point& x, const Point& h) const {
    const double radius = f.dim == 1 ? std::abs(h[0]) : std::hypot(h[0], h[1]);
    return apply_difference(f, x, h, order) * std::pow(radius, -exponent);
}

namespace {

struct XCell {
    Point x;
    double weight;
};

// x-nodes restricted to |x - center| <= reach (componentwise window clip).
std::vector<XCell> x_nodes(const NuGammaQuadrature& q, double reach) {
    std::vector<XCell> cells;
    const double w = q.restrict_x_per_shell ? std::min(q.x_half_width, reach)
                                            : q.x_half_width;
    if (q.x_kind == NuGammaQuadrature::XKind::Lattice) {
        const long count = std::lround(std::floor(2.0 * w / q.x_spacing));
        if (count <= 0) return cells;
        const double lo = q.x_center - 0.5 * count * q.x_spacing;
        if (q.dim == 1) {
            cells.reserve(count);
            for (long i = 0; i < count; ++i)
                cells.push_back({Point{lo + (i + 0.5) * q.x_spacing, 0.0}, q.x_spacing});
        } else {
            cells.reserve(count * count);
            const double cell = q.x_spacing * q.x_spacing;
            for (long i = 0; i < count; ++i)
                for (long j = 0; j < count; ++j)
                    cells.push_back({Point{lo + (i + 0.5) * q.x_spacing,
                                           lo + (j + 0.5) * q.x_spacing},
                                     cell});
        }
    } else {
        const double vol = (2.0 * w) * (2.0 * w);
        const double weight = vol / static_cast<double>(q.mc_count);
        cells.reserve(q.mc_count);
        for (std::size_t i = 0; i < q.mc_count; ++i) {
            cells.push_back({Point{uniform(q.seed, 11, i, q.x_center - w, q.x_center + w),
                                   uniform(q.seed, 12, i, q.x_center - w, q.x_center + w)},
                             weight});
        }
    }
    return cells;
}

} // namespace

WeightedValueSet difference_pushforward(const AnalyticField& f, int M, double b,
                                        const NuGammaQuadrature& q) {
    if (M < 1) throw validation_error("difference_pushforward: M must be >= 1");
    q.validate();
    if (q.dim != f.dim) throw validation_error("difference_pushforward: dim mismatch");

    const std::vector<HNode> hs = h_nodes(q);
    // Group h-nodes by shell so the x-window restriction is computed once.
    const double support = q.support_radius_hint >= 0.0
                               ? q.support_radius_hint
                               : f.support_radius.value_or(q.x_half_width);

    struct Chunk {
        std::vector<std::pair<double, double>> pairs;
    };
    // One chunk per shell keeps assembly deterministic under parallelism.
    const int shells = q.shell_max - q.shell_min + 1;
    std::vector<Chunk> chunks(shells);

    std::vector<std::vector<const HNode*>> by_shell(shells);
    for (const HNode& n : hs) {
        int j = static_cast<int>(std::floor(std::log2(n.radius)));
        j = std::min(std::max(j, q.shell_min), q.shell_max);
        by_shell[j - q.shell_min].push_back(&n);
    }

    parallel_for(shells, [&](std::size_t si) {
        const int j = q.shell_min + static_cast<int>(si);
        const double h_max = std::ldexp(1.0, j + 1);
        const double reach = support + M * h_max + 2.0 * q.x_spacing;
        const std::vector<XCell> xs = x_nodes(q, reach);
        auto& out = chunks[si].pairs;
        out.reserve(xs.size() * by_shell[si].size());
        for (const XCell& xc : xs) {
            for (const HNode* hn : by_shell[si]) {
                const complexd d = apply_difference(f, xc.x, hn->h, M);
                if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
                    throw validation_error(
                        "difference_pushforward: non-finite field value at x=" +
                        format_double(xc.x[0]) + ", h=" + format_double(hn->h[0]));
                const double mag = std::abs(d) * std::pow(hn->radius, -b);
                out.emplace_back(mag, xc.weight * hn->weight);
            }
        }
    });

    std::size_t total = 0;
    for (const Chunk& c : chunks) total += c.pairs.size();
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(total);
    for (Chunk& c : chunks)
        pairs.insert(pairs.end(), c.pairs.begin(), c.pairs.end());
    return WeightedValueSet(std::move(pairs));
}

namespace {

NormReport difference_report(double value, const std::string& family, int M, double b,
                             double gamma, double p, double r,
                             const NuGammaQuadrature& q) {
    NormReport report;
    report.value = value;
    report.family = family;
    report.params.s = b - gamma / p;
    report.params.p = p;
    report.params.r = r;
    report.params.gamma = gamma;
    report.params.homogeneous = true;
    report.k_min = q.shell_min;
    report.k_max = q.shell_max;
    report.seed = q.seed;
    report.quadrature = q.to_json();
    const double s = b - gamma / p;
    if (!(s > 0.0) || !(s < M))
        report.quadrature += " warning: b-gamma/p outside (0,M), norm may be degenerate";
    return report;
}

} // namespace

NormReport difference_quasi_norm(const AnalyticField& f, int M, double b, double gamma,
                                 double p, double r, const NuGammaQuadrature& q) {
    if (q.gamma != gamma)
        throw validation_error("difference_quasi_norm: quadrature gamma mismatch");
    const WeightedValueSet set = difference_pushforward(f, M, b, q);
    const double value = quasi_norm(set, LorentzParams{p, r});
    return difference_report(value, "difference", M, b, gamma, p, r, q);
}

NormReport bsy_diagonal_norm(const AnalyticField& f, double b, double p,
                             const NuGammaQuadrature& q) {
    if (q.gamma != static_cast<double>(f.dim))
        throw validation_error("bsy_diagonal_norm: requires gamma == d (Lebesgue dxdy)");
    q.validate();
    // Two-point form (f(x) - f(y)) / |x - y|^b with y = x + h.
    const std::vector<HNode> hs = h_nodes(q);
    const double support = q.support_radius_hint >= 0.0
                               ? q.support_radius_hint
                               : f.support_radius.value_or(q.x_half_width);
    WeightedValueSetBuilder builder;
    for (const HNode& hn : hs) {
        const double reach = support + hn.radius + 2.0 * q.x_spacing;
        const std::vector<XCell> xs = x_nodes(q, reach);
        for (const XCell& xc : xs) {
            const Point y{xc.x[0] + hn.h[0], xc.x[1] + hn.h[1]};
            const complexd d = f(xc.x) - f(y);
            builder.add(std::abs(d) * std::pow(hn.radius, -b), xc.weight * hn.weight);
        }
    }
    const double value = weak_norm(builder.build(), p);
    return difference_report(value, "bsyDiagonal", 1, b, q.gamma, p, kInf, q);
}

SampledFunction rb_apply(const BandField& F, double b, const LPFamily& family) {
    if (F.bands.empty()) throw validation_error("rb_apply: empty band field");
    const int n = F.n();
    const double box = F.box();
    const int dim = F.dim();
    std::vector<complexd> acc(static_cast<std::size_t>(n) * (dim == 2 ? n : 1), 0.0);
    for (const auto& [k, fk] : F.bands) {
        if (k < family.k_min() || k > family.k_max())
            throw band_out_of_range("rb_apply: band outside family range");
        if (fk.n() != n || fk.dim() != dim)
            throw validation_error("rb_apply: inconsistent band grids");
        Spectrum s = lp_project(to_spectrum(fk), family, k, LPKind::HomogeneousTilde);
        const double amp = std::pow(2.0, -static_cast<double>(k) * b);
        const SampledFunction part = to_samples(s);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += amp * part[i];
    }
    return SampledFunction(dim, box, n, std::move(acc), "Rb");
}

// --- Mollifier ---------------------------------------------------------------

namespace {

double bump_raw(double y) {
    const double u = 2.0 * y;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
}

} // namespace

const Mollifier& Mollifier::standard() {
    static const Mollifier m = [] {
        Mollifier out;
        const double integral = gl_integrate(bump_raw, -0.5, 0.5, 96);
        out.normalization = 1.0 / integral;
        return out;
    }();
    return m;
}

double Mollifier::phi(double y) const { return normalization * bump_raw(y); }

double Mollifier::dphi(double y) const {
    const double u = 2.0 * y;
    if (std::abs(u) >= 1.0) return 0.0;
    const double denom = 1.0 - u * u;
    return phi(y) * (-8.0 * y / (denom * denom));
}

double Mollifier::psi(double y) const { return -phi(y) - y * dphi(y); }

DifferenceKernelData difference_kernel_data(const AnalyticField& f, int M, double b) {
    if (f.dim != 1) throw validation_error("difference_kernel_data: d = 1 only");
    return [f, M, b](double y, double h) {
        return apply_difference(f, Point{y, 0.0}, Point{h, 0.0}, M) *
               std::pow(std::abs(h), -b);
    };
}

namespace {

complexd a_b_eps_value(const DifferenceKernelData& F, double b, double eps,
                       const Mollifier& moll, double x, int t_panels_per_log,
                       int t_order, int yh_order) {
    const double u_lo = std::log(eps);
    const double u_hi = -std::log(eps);
    const int panels = std::max(2, static_cast<int>(std::ceil(
                                       (u_hi - u_lo) * t_panels_per_log)));
    const QuadRule& tq = gauss_legendre(t_order);
    const QuadRule& yq = gauss_legendre(yh_order);
    complexd total = 0.0;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double ua = u_lo + (u_hi - u_lo) * pnl / panels;
        const double ub = u_lo + (u_hi - u_lo) * (pnl + 1) / panels;
        const double umid = 0.5 * (ua + ub), uhalf = 0.5 * (ub - ua);
        for (std::size_t ti = 0; ti < tq.nodes.size(); ++ti) {
            const double t = std::exp(umid + uhalf * tq.nodes[ti]);
            const double wt = tq.weights[ti] * uhalf; // dt/t in log coords
            // y within t/2 of x (supp psi_t), h within t/2 of x - y (supp phi_t).
            complexd inner = 0.0;
            for (std::size_t yi = 0; yi < yq.nodes.size(); ++yi) {
                const double y = x + 0.5 * t * yq.nodes[yi];
                const double wy = yq.weights[yi] * 0.5 * t;
                const double psi_val = moll.psi((x - y) / t) / t;
                if (psi_val == 0.0) continue;
                complexd hsum = 0.0;
                for (std::size_t hi = 0; hi < yq.nodes.size(); ++hi) {
                    const double h = (x - y) + 0.5 * t * yq.nodes[hi];
                    const double wh = yq.weights[hi] * 0.5 * t;
                    if (h == 0.0) continue;
                    const double phi_val = moll.phi((x - y - h) / t) / t;
                    if (phi_val == 0.0) continue;
                    hsum += wh * F(y, h) * std::pow(std::abs(h), b) * phi_val;
                }
                inner += wy * psi_val * hsum;
            }
            total += wt * inner;
        }
    }
    return total;
}

} // namespace

AnalyticField a_b_epsilon_apply(const DifferenceKernelData& F, double b, double eps,
                                const Mollifier& moll, const ABEpsilonOptions& opts) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw validation_error("a_b_epsilon_apply: need 0 < eps < 1");
    AnalyticField out;
    out.dim = 1;
    out.growth_exponent = 0;
    out.eval = [F, b, eps, moll, opts](const Point& xp) {
        const double x = xp[0];
        const complexd v = a_b_eps_value(F, b, eps, moll, x, opts.t_panels_per_log_unit,
                                         opts.t_order, opts.yh_order);
        if (opts.check_refinement) {
            const complexd coarse =
                a_b_eps_value(F, b, eps, moll, x, std::max(1, opts.t_panels_per_log_unit / 2),
                              opts.t_order, std::max(6, opts.yh_order / 2));
            const double scale = std::max(std::abs(v), 1e-12);
            if (std::abs(v - coarse) > 0.01 * scale)
                throw quadrature_unresolved("a_b_epsilon_apply: refinement changed the "
                                            "value by more than 1%");
        }
        return v;
    };
    return out;
}

complexd mollified_band_difference(const AnalyticField& f, double eps, double x,
                                   const Mollifier& moll, int order) {
    auto convolve = [&](double t) {
        auto integrand_re = [&](double y) {
            return (moll.phi(y / t) / t * f(x - y)).real();
        };
        auto integrand_im = [&](double y) {
            return (moll.phi(y / t) / t * f(x - y)).imag();
        };
        const double re = gl_integrate(integrand_re, -0.5 * t, 0.5 * t, order);
        const double im = gl_integrate(integrand_im, -0.5 * t, 0.5 * t, order);
        return complexd(re, im);
    };
    return convolve(eps) - convolve(1.0 / eps);
}

} // namespace besovlab
