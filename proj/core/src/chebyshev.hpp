#pragma once

#include <complex>
#include <span>
#include <vector>

namespace resonance::detail {

/// Chebyshev-Lobatto rule on the unit interval, nodes ascending from 0 to 1.
struct ChebyshevRule {
    int size = 0;
    std::vector<double> nodes;
    std::vector<double> bary_weights;
    /// Row-major size x size: (R f)_i approximates the integral of f over [t_i, 1].
    std::vector<double> right_cumulative;
};

/// Cached and safe to call concurrently.
const ChebyshevRule& chebyshev_rule(int size);

/// Right-cumulative integrals over [a, b] of samples taken at the rule nodes.
std::vector<std::complex<double>> right_cumulative(const ChebyshevRule& rule, double length,
                                                   std::span<const std::complex<double>> f);

std::complex<double> barycentric(const ChebyshevRule& rule,
                                 std::span<const std::complex<double>> values, double t);

} // namespace resonance::detail
