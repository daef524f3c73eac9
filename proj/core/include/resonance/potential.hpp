#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace resonance {

/// Which operator the potential is attached to: the whole line, or the
/// half-line with a Dirichlet (f(0) = 0) or Neumann (f'(0) = 0) condition.
enum class BoundaryCase { Line, Dirichlet, Neumann };

std::string_view to_string(BoundaryCase c) noexcept;
BoundaryCase boundary_case_from_string(std::string_view name);

/// A real, compactly supported, piecewise-constant potential.
///
/// Piece j occupies [x_{j}, x_{j+1}) with value q_j; the potential vanishes
/// outside [x_0, x_M]. The constructor brings the data into canonical form:
/// zero-valued pieces at either end are dropped, so a nonempty potential
/// always starts and ends with a nonzero piece and q == 0 has no pieces.
class PiecewisePotential {
public:
    PiecewisePotential() = default;
    PiecewisePotential(std::vector<double> breakpoints, std::vector<double> values,
                       BoundaryCase boundary_case = BoundaryCase::Line);

    /// q = value on [a, b).
    static PiecewisePotential constant(double value, double a, double b,
                                       BoundaryCase boundary_case = BoundaryCase::Line);

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t piece_count() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    BoundaryCase boundary_case() const noexcept { return case_; }

    double support_begin() const noexcept { return empty() ? 0.0 : breakpoints_.front(); }
    double support_end() const noexcept { return empty() ? 0.0 : breakpoints_.back(); }
    double piece_length(std::size_t j) const { return breakpoints_[j + 1] - breakpoints_[j]; }

    /// Total translation applied by canonicalize() (original = this + shift).
    double shift() const noexcept { return shift_; }

    /// Line potentials are canonical once their support starts at 0; half-line
    /// potentials are never translated, so they are always canonical.
    bool is_canonical() const noexcept;

    double operator()(double x) const noexcept;

    PiecewisePotential with_case(BoundaryCase c) const;

private:
    friend PiecewisePotential canonicalize(const PiecewisePotential& p);
    friend PiecewisePotential translated(const PiecewisePotential& p, double offset);

    std::vector<double> breakpoints_;
    std::vector<double> values_;
    BoundaryCase case_ = BoundaryCase::Line;
    double shift_ = 0.0;
};

struct PotentialConstants {
    double gamma = 0.0;          ///< support diameter (line) or sup of support (half-line)
    double norm_l1 = 0.0;        ///< integral of |q|
    double norm_weighted = 0.0;  ///< integral of |t q(t)| over the canonical support [0, gamma]
    double q0 = 0.0;             ///< integral of q
    double Q = 0.0;              ///< max(norm_l1, norm_weighted)
};

/// Translate a line potential so its support starts at 0. Half-line
/// potentials are returned unchanged: translation would alter the problem.
PiecewisePotential canonicalize(const PiecewisePotential& p);

/// Rigid translation x -> x + offset (line potentials only).
PiecewisePotential translated(const PiecewisePotential& p, double offset);

PotentialConstants constants(const PiecewisePotential& p);

struct EvenExtension {
    PiecewisePotential potential;  ///< q(|x|) on [-gamma, gamma], line case
    double q_tilde = 0.0;          ///< 2 ||q|| max(1, gamma)
};

/// Reflect a half-line potential into an even line potential.
EvenExtension even_extension(const PiecewisePotential& p);

/// q_s(x) = s^2 q(s x). Zeros of every Jost function map as k -> s k.
PiecewisePotential rescaled(const PiecewisePotential& p, double s);

/// Upper bound for kappa over bound states k = i kappa: kappa^2 <= -min q.
double bound_state_ceiling(const PiecewisePotential& p) noexcept;

} // namespace resonance
