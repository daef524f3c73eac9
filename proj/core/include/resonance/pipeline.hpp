#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resonance/bounds.hpp"
#include "resonance/potential.hpp"
#include "resonance/zeros.hpp"

namespace resonance {

/// [-R, R] x [-min(R, 40/gamma), ceiling + 1] with R = 25 pi/gamma, so
/// that about 50 zeros are expected; R = 10 for q == 0.
Rectangle auto_window(const PiecewisePotential& p);

struct SpectrumResult {
    BoundaryCase boundary_case = BoundaryCase::Line;
    SpectrumWindow spectrum;
    bool auto_window = false;
    int shrink_steps = 0;
    double ceiling = 0.0;  ///< bound_state_ceiling of the potential
    std::vector<std::string> notes;
};

/// Locates the zeros of the case's Jost function. With no explicit window
/// the auto window is used and shrunk on overflow; an explicit window
/// propagates Error(Overflow).
SpectrumResult compute_spectrum(const PiecewisePotential& p, BoundaryCase c,
                                const std::optional<Rectangle>& window = std::nullopt,
                                const ZeroFinderOptions& opts = {});

/// Certificate families accepted by certify().
const std::vector<std::string>& certificate_names();

struct CertifyConfig {
    std::vector<std::string> selection;  ///< empty means all
    std::vector<double> p_values{1.1, 1.5, 2.0, 3.0, 10.0};
    std::vector<double> radii{1.0, 5.0, 10.0, 20.0};
    std::optional<Rectangle> window;
    ZeroFinderOptions zeros;
};

struct CertifyResult {
    std::vector<BoundCertificate> certificates;
    std::vector<SpectrumResult> spectra;  ///< the requested case first
    std::vector<std::string> notes;

    /// True when no non-informational certificate failed.
    bool all_pass() const noexcept;
};

CertifyResult certify(const PiecewisePotential& p, BoundaryCase c, const CertifyConfig& cfg);

} // namespace resonance
