#include "resonance/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "resonance/error.hpp"

namespace resonance {

std::string_view to_string(BoundaryCase c) noexcept {
    switch (c) {
    case BoundaryCase::Line: return "line";
    case BoundaryCase::Dirichlet: return "dirichlet";
    case BoundaryCase::Neumann: return "neumann";
    }
    return "line";
}

BoundaryCase boundary_case_from_string(std::string_view name) {
    if (name == "line") return BoundaryCase::Line;
    if (name == "dirichlet") return BoundaryCase::Dirichlet;
    if (name == "neumann") return BoundaryCase::Neumann;
    throw Error(ErrorCode::Parse, "unknown case '" + std::string(name) +
                                      "' (expected line, dirichlet or neumann)");
}

PiecewisePotential::PiecewisePotential(std::vector<double> breakpoints,
                                       std::vector<double> values,
                                       BoundaryCase boundary_case)
    : case_(boundary_case) {
    if (values.empty()) {
        if (breakpoints.size() > 1)
            throw Error(ErrorCode::InvalidArgument, "breakpoints given without values");
        return;
    }
    if (breakpoints.size() != values.size() + 1)
        throw Error(ErrorCode::InvalidArgument,
                    "expected " + std::to_string(values.size() + 1) + " breakpoints for " +
                        std::to_string(values.size()) + " values, got " +
                        std::to_string(breakpoints.size()));
    for (double x : breakpoints)
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite breakpoint");
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite value");
    for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j)
        if (!(breakpoints[j] < breakpoints[j + 1]))
            throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
    if (boundary_case != BoundaryCase::Line && breakpoints.front() < 0.0)
        throw Error(ErrorCode::InvalidArgument, "half-line potential must be supported in [0, inf)");

    // Trim zero pieces at both ends.
    std::size_t first = 0, last = values.size();
    while (first < last && values[first] == 0.0) ++first;
    while (last > first && values[last - 1] == 0.0) --last;
    if (first == last) return;

    breakpoints_.assign(breakpoints.begin() + static_cast<std::ptrdiff_t>(first),
                        breakpoints.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    values_.assign(values.begin() + static_cast<std::ptrdiff_t>(first),
                   values.begin() + static_cast<std::ptrdiff_t>(last));
}

PiecewisePotential PiecewisePotential::constant(double value, double a, double b,
                                                BoundaryCase boundary_case) {
    return PiecewisePotential({a, b}, {value}, boundary_case);
}

bool PiecewisePotential::is_canonical() const noexcept {
    return case_ != BoundaryCase::Line || empty() || breakpoints_.front() == 0.0;
}

double PiecewisePotential::operator()(double x) const noexcept {
    if (empty() || x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

PiecewisePotential PiecewisePotential::with_case(BoundaryCase c) const {
    PiecewisePotential out(breakpoints_, values_, c);
    out.shift_ = shift_;
    return out;
}

PiecewisePotential translated(const PiecewisePotential& p, double offset) {
    if (p.boundary_case() != BoundaryCase::Line)
        throw Error(ErrorCode::InvalidArgument, "only line potentials can be translated");
    PiecewisePotential out = p;
    for (double& x : out.breakpoints_) x += offset;
    out.shift_ -= offset;
    return out;
}

PiecewisePotential canonicalize(const PiecewisePotential& p) {
    if (p.boundary_case() != BoundaryCase::Line || p.empty()) return p;
    const double x0 = p.breakpoints_.front();
    PiecewisePotential out = p;
    for (double& x : out.breakpoints_) x -= x0;
    out.breakpoints_.front() = 0.0;
    out.shift_ = p.shift_ + x0;
    return out;
}

PotentialConstants constants(const PiecewisePotential& p) {
    PotentialConstants c;
    if (p.empty()) return c;
    // Weighted norm is taken over the canonical support [0, gamma].
    const double origin = p.boundary_case() == BoundaryCase::Line ? p.support_begin() : 0.0;
    c.gamma = p.support_end() - origin;
    const auto xs = p.breakpoints();
    const auto qs = p.values();
    for (std::size_t j = 0; j < qs.size(); ++j) {
        const double a = xs[j] - origin, b = xs[j + 1] - origin;
        c.norm_l1 += std::abs(qs[j]) * (b - a);
        c.q0 += qs[j] * (b - a);
        c.norm_weighted += std::abs(qs[j]) * 0.5 * (b * b - a * a);
    }
    c.Q = std::max(c.norm_l1, c.norm_weighted);
    return c;
}

EvenExtension even_extension(const PiecewisePotential& p) {
    if (p.boundary_case() == BoundaryCase::Line)
        throw Error(ErrorCode::InvalidArgument, "even extension needs a half-line potential");
    EvenExtension ext;
    if (p.empty()) return ext;

    const auto xs = p.breakpoints();
    const auto qs = p.values();
    std::vector<double> bx;
    std::vector<double> bv;
    for (std::size_t j = xs.size(); j-- > 0;) bx.push_back(xs[j] == 0.0 ? 0.0 : -xs[j]);
    for (std::size_t j = qs.size(); j-- > 0;) bv.push_back(qs[j]);
    if (xs.front() > 0.0) {
        bv.push_back(0.0);  // the gap (-x0, x0)
        bx.push_back(xs.front());
    }
    for (std::size_t j = 0; j < qs.size(); ++j) {
        bv.push_back(qs[j]);
        if (j > 0) bx.push_back(xs[j]);
    }
    bx.push_back(xs.back());
    ext.potential = PiecewisePotential(std::move(bx), std::move(bv), BoundaryCase::Line);

    const auto c = constants(p);
    ext.q_tilde = 2.0 * c.norm_l1 * std::max(1.0, c.gamma);
    return ext;
}

PiecewisePotential rescaled(const PiecewisePotential& p, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    std::vector<double> xs(p.breakpoints().begin(), p.breakpoints().end());
    std::vector<double> qs(p.values().begin(), p.values().end());
    for (double& x : xs) x /= s;
    for (double& q : qs) q *= s * s;
    return PiecewisePotential(std::move(xs), std::move(qs), p.boundary_case());
}

double bound_state_ceiling(const PiecewisePotential& p) noexcept {
    double lowest = 0.0;
    for (double q : p.values()) lowest = std::min(lowest, q);
    return std::sqrt(std::max(0.0, -lowest));
}

} // namespace resonance
