#include "besovlab/common.hpp"

#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

namespace besovlab {

namespace {

QuadRule make_gauss_legendre(int order) {
    QuadRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

std::mutex g_rule_mutex;
std::map<int, QuadRule> g_rules;

std::atomic<int> g_workers{0};

} // namespace

const QuadRule& gauss_legendre(int order) {
    if (order < 1) throw validation_error("gauss_legendre: order must be >= 1");
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(order);
    if (it == g_rules.end()) it = g_rules.emplace(order, make_gauss_legendre(order)).first;
    return it->second;
}

int worker_count() {
    const int configured = g_workers.load();
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_worker_count(int n) { g_workers.store(n < 0 ? 0 : n); }

namespace {
thread_local bool t_inside_parallel = false;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const int workers = std::min<std::size_t>(worker_count(), count);
    // Nested parallel sections run serially; the outermost loop owns the pool.
    if (workers <= 1 || t_inside_parallel) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            t_inside_parallel = true;
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string format_double(double x) {
    char buf[40];
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace besovlab
