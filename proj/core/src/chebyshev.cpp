#include "chebyshev.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace resonance::detail {

namespace {

std::unique_ptr<ChebyshevRule> build_rule(int size) {
    auto rule = std::make_unique<ChebyshevRule>();
    const int n = size - 1;
    rule->size = size;
    rule->nodes.resize(size);
    rule->bary_weights.resize(size);
    for (int m = 0; m <= n; ++m) {
        const double s = std::cos(std::numbers::pi * m / n);
        rule->nodes[m] = 0.5 * (1.0 - s);
        rule->bary_weights[m] = (m % 2 == 0 ? 1.0 : -1.0) * ((m == 0 || m == n) ? 0.5 : 1.0);
    }

    // values -> Chebyshev coefficients c_0..c_n
    std::vector<double> to_coeff(static_cast<std::size_t>(size) * size);
    for (int k = 0; k <= n; ++k)
        for (int m = 0; m <= n; ++m) {
            double v = 2.0 / n * std::cos(std::numbers::pi * k * m / n);
            if (m == 0 || m == n) v *= 0.5;
            if (k == 0 || k == n) v *= 0.5;
            to_coeff[k * size + m] = v;
        }

    // coefficients -> antiderivative coefficients F_0..F_{n+1}, F(-1) = 0
    const int nf = n + 2;
    std::vector<double> integrate(static_cast<std::size_t>(nf) * size, 0.0);
    auto at = [&](int row, int col) -> double& { return integrate[row * size + col]; };
    at(1, 0) += 1.0;
    if (n >= 2) at(1, 2) -= 0.5;
    for (int k = 2; k <= n + 1; ++k) {
        at(k, k - 1) += 1.0 / (2.0 * k);
        if (k + 1 <= n) at(k, k + 1) -= 1.0 / (2.0 * k);
    }
    for (int col = 0; col < size; ++col) {
        double f0 = 0.0;
        for (int k = 1; k < nf; ++k) f0 -= at(k, col) * (k % 2 == 0 ? 1.0 : -1.0);
        at(0, col) = f0;
    }

    // evaluate F at the nodes; the unit interval carries a factor 1/2
    std::vector<double> ic(static_cast<std::size_t>(nf) * size, 0.0);
    for (int k = 0; k < nf; ++k)
        for (int m = 0; m < size; ++m) {
            double acc = 0.0;
            for (int j = 0; j < size; ++j) acc += at(k, j) * to_coeff[j * size + m];
            ic[k * size + m] = acc;
        }
    rule->right_cumulative.assign(static_cast<std::size_t>(size) * size, 0.0);
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k < nf; ++k) {
            const double tk = std::cos(std::numbers::pi * k * i / n);
            for (int m = 0; m < size; ++m)
                rule->right_cumulative[i * size + m] += 0.5 * tk * ic[k * size + m];
        }
    return rule;
}

} // namespace

const ChebyshevRule& chebyshev_rule(int size) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ChebyshevRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[size];
    if (!slot) slot = build_rule(size);
    return *slot;
}

std::vector<std::complex<double>> right_cumulative(const ChebyshevRule& rule, double length,
                                                   std::span<const std::complex<double>> f) {
    const int n = rule.size;
    std::vector<std::complex<double>> out(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> acc{};
        const double* row = rule.right_cumulative.data() + static_cast<std::size_t>(i) * n;
        for (int m = 0; m < n; ++m) acc += row[m] * f[m];
        out[i] = length * acc;
    }
    return out;
}

std::complex<double> barycentric(const ChebyshevRule& rule,
                                 std::span<const std::complex<double>> values, double t) {
    std::complex<double> num{};
    double den = 0.0;
    for (int m = 0; m < rule.size; ++m) {
        const double diff = t - rule.nodes[m];
        if (diff == 0.0) return values[m];
        const double c = rule.bary_weights[m] / diff;
        num += c * values[m];
        den += c;
    }
    return num / den;
}

} // namespace resonance::detail
