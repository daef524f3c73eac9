#pragma once

// Independent reference computations. None of these touch the transfer
// matrices or the contour integrator of the library.

#include <complex>
#include <cstdint>
#include <vector>

#include "resonance/entire_function.hpp"
#include "resonance/potential.hpp"
#include "resonance/zeros.hpp"

namespace oracle {

using resonance::complex;

struct OdeValue {
    complex psi0;
    complex dpsi0;
    complex w;  ///< ik psi0 + psi0'
};

/// Classical RK4 for -f'' + q f = k^2 f from x = support end down to 0, steps
/// aligned with the breakpoints and halved until the result moves by less
/// than rel_tol. Line potentials are integrated over their canonical support.
OdeValue rk_jost(const resonance::PiecewisePotential& p, complex k, double rel_tol = 1e-12);

/// Bound states k = i kappa of the Dirichlet well q = -depth on [0, a]: roots
/// of cos(mu a) + kappa sin(mu a)/mu, mu = sqrt(depth - kappa^2), by bisection.
std::vector<double> dirichlet_well_kappas(double depth, double a);

/// Winding number of f along the rectangle from the accumulated phase of
/// `samples` evenly spaced points.
int phase_winding(const resonance::EntireFunction& f, const resonance::Rectangle& r, int samples = 10000);

/// Randomized test potentials: M in 1..5 pieces, |q_j| <= 30, support
/// diameter in [0.2, 3]. Line potentials get a random offset in [-1, 1].
std::vector<resonance::PiecewisePotential> battery(int count, resonance::BoundaryCase c, std::uint64_t seed);

/// Two-sided multiset matching of zero lists. Around every zero of either
/// list, the zeros of a and of b within a small cluster radius must have
/// equal total multiplicity and centroids within `tol`. Zeros outside
/// `inner` are ignored.
bool same_zeros(const std::vector<resonance::SpectralPoint>& a, const std::vector<resonance::SpectralPoint>& b,
                const resonance::Rectangle& inner, double tol);

} // namespace oracle
