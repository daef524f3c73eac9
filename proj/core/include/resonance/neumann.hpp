#pragma once

#include <complex>
#include <vector>

#include "resonance/entire_function.hpp"
#include "resonance/potential.hpp"

namespace resonance {

/// Iterates y = 1 + int_x^gamma G(t - x, k) q(t) y(t) dt, G(t, k) = sin(kt)/k e^{ikt},
/// whose solution is y(x, k) = e^{-ikx} psi_+(x, k). Independent of the
/// transfer-matrix route in jost.hpp and used to cross-check it.
struct NeumannSeriesResult {
    complex value;                ///< y(x, k)
    std::vector<complex> terms;   ///< y_0 = 1, y_1, ..., y_N at x
    double truncation_bound = 0;  ///< envelope bound on the discarded tail
    double h = 0;                 ///< Q / max(1, |k|)
    double v_minus = 0;
};

inline constexpr int neumann_max_terms = 60;

/// Every computed term is checked against |y_n| <= h^n/n! e^{2(gamma-x) v_-};
/// a violation raises Error(EnvelopeViolation). Error(SeriesNotConverged)
/// when the tail cannot reach tol within 60 terms.
NeumannSeriesResult neumann_series(const PiecewisePotential& p, double x, complex k,
                                   double tol = 1e-13);

/// -int_0^gamma q(t) (y(t, k) - 1) dt from the series.
complex w_star_series(const PiecewisePotential& p, complex k, double tol = 1e-13);

/// 2ik - q0 + w_*(k) from the series.
complex neumann_wronskian(const PiecewisePotential& p, complex k, double tol = 1e-13);

} // namespace resonance
