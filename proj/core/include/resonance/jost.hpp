#pragma once

#include <array>
#include <complex>

#include "resonance/entire_function.hpp"
#include "resonance/potential.hpp"

namespace resonance {

/// Intermediate magnitudes above this raise Error(Overflow).
inline constexpr double overflow_threshold = 1e280;

/// cos(sqrt z), sin(sqrt z)/sqrt z and the z-derivative of the latter,
/// evaluated as entire functions of z: no branch cut anywhere.
struct EntireKernels {
    complex cos_sqrt;
    complex sinc_sqrt;
    complex sinc_sqrt_dz;
};

EntireKernels entire_kernels(complex z) noexcept;

/// Backward propagator (f, f')(x + length) -> (f, f')(x) across a piece of
/// constant value q, together with its derivative in k. Row-major 2x2.
struct PieceMatrix {
    std::array<complex, 4> m;
    std::array<complex, 4> dm;

    complex determinant() const noexcept { return m[0] * m[3] - m[1] * m[2]; }
};

PieceMatrix piece_matrix(double q, double length, complex k) noexcept;

struct JostEvaluation {
    complex k;
    complex psi0;       ///< psi_+(0, k)
    complex dpsi0;      ///< psi_+'(0, k)
    complex w;          ///< Wronskian {psi_-, psi_+}
    complex s;          ///< {psi_+(., k), psi_-(., -k)}
    complex dw;         ///< dw/dk
    complex dpsi0_dk;   ///< d psi_+(0, k)/dk
    complex ddpsi0_dk;  ///< d psi_+'(0, k)/dk
};

/// Exact transfer-matrix evaluation. Line potentials must be canonical
/// (support starting at 0); half-line potentials are used as given.
JostEvaluation evaluate(const PiecewisePotential& p, complex k);

/// w(k) - 2ik + q0. Both envelopes from w_star_envelopes() are checked and
/// Error(EnvelopeViolation) is raised if either fails.
complex w_star(const PiecewisePotential& p, complex k);

struct WStarEnvelopes {
    double norm_form;  ///< ||q|| h exp(h + 2 gamma v_-)
    double q_form;     ///< Q^2/|k|_1 exp(Q/|k|_1 + 2 gamma v_-)
};

WStarEnvelopes w_star_envelopes(const PotentialConstants& c, complex k) noexcept;

/// v_- = (|Im k| - Im k)/2.
inline double v_minus(complex k) noexcept { return 0.5 * (std::abs(k.imag()) - k.imag()); }

using ScatteringMatrix = std::array<std::array<complex, 2>, 2>;

/// [[1/a, r_-], [r_+, 1/a]] with a = w/(2ik), r_(+/-)(k) = s(-/+k)/w(k).
/// Line case, real k != 0.
ScatteringMatrix scattering_matrix(const PiecewisePotential& p, double k);

/// The entire function whose zeros are the spectrum of the given case:
/// w (line), psi_+(0, .) (Dirichlet) or psi_+'(0, .) (Neumann).
EntireFunction jost_function(const PiecewisePotential& p, BoundaryCase c);
EntireFunction jost_function(const PiecewisePotential& p);

} // namespace resonance
