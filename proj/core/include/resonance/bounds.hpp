#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "resonance/entire_function.hpp"
#include "resonance/potential.hpp"
#include "resonance/zeros.hpp"

namespace resonance {

/// Absolute constant of the resonance-sum inequality, fixed at its upper bound.
inline constexpr double lt_constant = 32.0;

/// One inequality instance lhs <= rhs.
struct BoundCertificate {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  ///< rhs - lhs
    bool pass = false;    ///< lhs <= rhs, no slack
    /// Diagnostic only: a failed informational certificate is reported but
    /// does not count as a violated bound.
    bool informational = false;
    BoundaryCase boundary_case = BoundaryCase::Line;
    std::map<std::string, double> inputs;
    std::vector<std::string> notes;
};

BoundCertificate make_certificate(std::string id, double lhs, double rhs, BoundaryCase c,
                                  std::map<std::string, double> inputs = {},
                                  std::vector<std::string> notes = {});

/// integral of (1 + x^2)^(-p/2) over R, via log-Gamma. Throws for p <= 1.
double y_p(double p);
/// Same integral by tanh-sinh quadrature (independent cross-check).
double y_p_quadrature(double p);

/// Right-hand side of the counting bound. For half-line cases it bounds the
/// mean of the Dirichlet and Neumann counting functions.
double counting_bound_rhs(BoundaryCase c, const PotentialConstants& consts, double r);

/// Line case: N(r, w) <= rhs.
BoundCertificate counting_certificate(const PotentialConstants& consts,
                                      std::span<const SpectrumWindow> line, double r);
/// Half-line: (N(r, psi(0,.)) + N(r, psi'(0,.)))/2 <= rhs.
BoundCertificate counting_certificate(const PotentialConstants& consts,
                                      std::span<const SpectrumWindow> dirichlet,
                                      std::span<const SpectrumWindow> neumann, double r);

/// Largest radius R such that some complete window covers {|k| <= R}.
double covered_radius(std::span<const SpectrumWindow> windows) noexcept;

/// Resonance sum over located zeros with |k| <= radius against
/// 32 Y_p (1 + gamma/pi + Qcal).
BoundCertificate lt_sum_certificate(std::span<const SpectrumWindow> windows, double radius, double p,
                                    const PotentialConstants& consts, BoundaryCase c);

/// |k| e^{-2|Im k|} <= ||q|| e^{||q||} for every located Dirichlet zero with
/// Im k <= 0, after rescaling the support to [0, 1]. One certificate per zero.
std::vector<BoundCertificate> forbidden_domain_check(std::span<const SpectrumWindow> dirichlet,
                                                     const PotentialConstants& consts);

struct RoucheResult {
    bool holds = false;         ///< smallness condition (part i)
    bool part_two = false;      ///< 1 <= r <= 1/(2 gamma) and 2||q|| <= r
    BoundCertificate certificate;
};

RoucheResult rouche_predicate(const PotentialConstants& consts, double r);

/// Counts zeros of f in {|k| < r}; certificate lhs = |count - 1|, rhs = 0.
BoundCertificate single_zero_certificate(const EntireFunction& f, double r,
                                         const ZeroFinderOptions& opts = {});

/// |log|f(c)| + sum log(r/|z - c|) - mean of log|f| on the circle|.
/// `zeros` must list every zero in the open disk.
double jensen_residual(const EntireFunction& f, complex center, double r,
                       std::span<const SpectralPoint> zeros);
/// Same, drawing zeros from a complete covering window.
double jensen_check(const EntireFunction& f, complex center, double r,
                    std::span<const SpectrumWindow> windows);

struct EgammaGrid {
    double real_max = 1e3;
    int real_points = 1000;
    Rectangle region{-20.0, 20.0, -5.0, 5.0};
    int re_points = 41;
    int im_points = 21;
};

struct EgammaWitness {
    double f0 = 0.0;
    double lower_ratio = 0.0;   ///< min |w(k)|/(2|k|) over the real grid
    double lower_at = 0.0;
    double envelope_ratio = 0.0;  ///< max |w - 2ik + f0| / envelope over the complex grid
    complex envelope_at;
};

/// Line case only.
EgammaWitness egamma_witness(const PiecewisePotential& p, const EgammaGrid& grid = {});

/// C(f) = (12/log 4)(gamma/pi + 1 + (|q0| + 3Q)/4).
double carleson_constant(const PotentialConstants& consts) noexcept;

/// Mass of the shifted zero measure in D_-(t, r) against C(f) r.
BoundCertificate carleson_box_check(std::span<const SpectrumWindow> windows, double t, double r,
                                    const PotentialConstants& consts);

struct SlopeReport {
    double slope = 0.0;
    double intercept = 0.0;
    double expected = 0.0;  ///< 2 gamma/pi
    double relative_deviation = 0.0;
    bool degenerate = false;  ///< gamma == 0
    std::vector<double> radii;
    std::vector<int> counts;
};

SlopeReport asymptotic_slope(std::span<const SpectrumWindow> windows, std::span<const double> radii,
                             double gamma);

/// max over the grid of |w~(k) - 2 psi(0,k) psi'(0,k)| / max(|w~(k)|, 1),
/// with w~ the Wronskian of the even extension.
double factorization_check(const PiecewisePotential& p, const Rectangle& grid, int re_points = 21,
                           int im_points = 21);

} // namespace resonance
