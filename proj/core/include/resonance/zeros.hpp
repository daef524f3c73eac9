#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "resonance/entire_function.hpp"

namespace resonance {

/// Axis-aligned rectangle [u0, u1] x [v0, v1] in the k-plane.
struct Rectangle {
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;

    double width() const noexcept { return u1 - u0; }
    double height() const noexcept { return v1 - v0; }
    double diameter() const noexcept;
    complex center() const noexcept { return {0.5 * (u0 + u1), 0.5 * (v0 + v1)}; }
    bool contains(complex z, double margin = 0.0) const noexcept;
    bool contains(const Rectangle& other) const noexcept;
    /// Scale both half-widths about the center.
    Rectangle dilated(double factor) const noexcept;
};

enum class SpectralKind { Eigenvalue, Resonance, RealResonance, Antibound };

std::string_view to_string(SpectralKind kind) noexcept;

struct SpectralPoint {
    complex k;
    int multiplicity = 1;
    SpectralKind kind = SpectralKind::Resonance;
};

/// All zeros found inside `window`. `complete` is set when the multiplicities
/// add up to the argument-principle count of the whole window.
/// `zero_free_above` records that no zero can lie above the window's top
/// edge (bound states sit below the bound_state_ceiling of the potential).
struct SpectrumWindow {
    Rectangle window;
    std::vector<SpectralPoint> points;
    int total_count = 0;
    bool complete = false;
    bool zero_free_above = false;
};

struct ZeroFinderOptions {
    double tol = 1e-10;           ///< Newton step tolerance on refined roots
    double edge_eps = 1e-6;       ///< minimum admissible distance of a zero to a contour
    int max_dilations = 5;        ///< contour dilation retries on ZeroOnContour
    std::uint64_t seed = 0;       ///< dilation / split-offset RNG seed
    int jobs = 1;                 ///< worker threads for box subdivision
    double initial_panel = 0.5;   ///< starting panel length on rectangle edges
};

struct ContourCount {
    int count = 0;
    complex raw;           ///< unrounded (1/2 pi i) contour integral of f'/f
    complex first_moment;  ///< (1/2 pi i) contour integral of k f'/f: sum of zeros inside
    Rectangle contour;     ///< the rectangle actually integrated (after dilation)
    int dilations = 0;
};

/// Argument-principle count of zeros inside the rectangle. Retries with a
/// randomly dilated contour when a zero is within edge_eps of an edge.
ContourCount count_zeros(const EntireFunction& f, const Rectangle& rect,
                         const ZeroFinderOptions& opts = {});

/// Same on the circle |k - center| = radius; no dilation retries.
int count_zeros_disk(const EntireFunction& f, complex center, double radius,
                     const ZeroFinderOptions& opts = {});

/// Quadrisection + Newton refinement of every zero in the window.
SpectrumWindow locate_zeros(const EntireFunction& f, const Rectangle& window,
                            const ZeroFinderOptions& opts = {});

SpectralKind classify(complex k, double axis_tol) noexcept;

/// Zeros ordered by (|k|, Re k, Im k).
std::vector<SpectralPoint> sorted_by_modulus(std::vector<SpectralPoint> points);

/// Largest r such that the disk |k - center| <= r lies in the verified region.
double coverage_radius(const SpectrumWindow& w, complex center = {}) noexcept;

/// True when every zero in `region` is guaranteed to be listed in w.
bool covers(const SpectrumWindow& w, const Rectangle& region) noexcept;

/// Number of zeros with |k - center| <= r, with multiplicity. Throws
/// Error(IncompleteCoverage) unless some complete window covers the disk.
int counting_function(std::span<const SpectrumWindow> windows, double r, complex center = {});
int counting_function(const SpectrumWindow& window, double r, complex center = {});

} // namespace resonance
