#include "resonance/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "resonance/error.hpp"
#include "resonance/jost.hpp"

namespace resonance {

namespace {

constexpr double pi = std::numbers::pi;
constexpr complex I{0.0, 1.0};

std::map<std::string, double> base_inputs(const PotentialConstants& c) {
    return {{"gamma", c.gamma}, {"norm_l1", c.norm_l1}, {"norm_weighted", c.norm_weighted},
            {"q0", c.q0}, {"Q", c.Q}};
}

// Qcal of the resonance-sum bound.
double sum_constant(BoundaryCase bc, const PotentialConstants& c) noexcept {
    if (bc == BoundaryCase::Line) return c.Q;
    return 2.0 * c.norm_l1 * std::max(1.0, c.gamma);
}

} // namespace

BoundCertificate make_certificate(std::string id, double lhs, double rhs, BoundaryCase c,
                                  std::map<std::string, double> inputs, std::vector<std::string> notes) {
    BoundCertificate cert;
    cert.id = std::move(id);
    cert.lhs = lhs;
    cert.rhs = rhs;
    cert.margin = rhs - lhs;
    cert.pass = lhs <= rhs;
    cert.boundary_case = c;
    cert.inputs = std::move(inputs);
    cert.notes = std::move(notes);
    return cert;
}

double y_p(double p) {
    if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "p must exceed 1");
    return std::exp(0.5 * std::log(pi) + std::lgamma(0.5 * (p - 1.0)) - std::lgamma(0.5 * p));
}

double y_p_quadrature(double p) {
    if (!(p > 1.0)) throw Error(ErrorCode::InvalidArgument, "p must exceed 1");
    // x = tan(theta) turns the integrand into cos^(p-2) on (-pi/2, pi/2).
    // Near the endpoints cos(theta) = sin(distance to the endpoint).
    boost::math::quadrature::tanh_sinh<double> integrator;
    const auto f = [p](double, double xc) { return std::pow(std::sin(std::abs(xc)), p - 2.0); };
    return integrator.integrate(f, -0.5 * pi, 0.5 * pi, 1e-14);
}

double counting_bound_rhs(BoundaryCase c, const PotentialConstants& consts, double r) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    const double r1 = r + 0.5;
    const double tail = c == BoundaryCase::Line ? 9.0 * consts.Q
                                                : 9.0 * consts.norm_l1 * std::max(1.0, consts.gamma);
    return (4.0 * r1 * consts.gamma / pi + std::log1p(4.0 * r1) + tail / (1.0 + 4.0 * r1)) /
           std::numbers::ln2;
}

BoundCertificate counting_certificate(const PotentialConstants& consts,
                                      std::span<const SpectrumWindow> line, double r) {
    const int n = counting_function(line, r);
    auto inputs = base_inputs(consts);
    inputs["r"] = r;
    return make_certificate("counting", n, counting_bound_rhs(BoundaryCase::Line, consts, r),
                            BoundaryCase::Line, std::move(inputs), {"lhs = N(r, w)"});
}

BoundCertificate counting_certificate(const PotentialConstants& consts,
                                      std::span<const SpectrumWindow> dirichlet,
                                      std::span<const SpectrumWindow> neumann, double r) {
    const int nd = counting_function(dirichlet, r);
    const int nn = counting_function(neumann, r);
    auto inputs = base_inputs(consts);
    inputs["r"] = r;
    inputs["count_dirichlet"] = nd;
    inputs["count_neumann"] = nn;
    return make_certificate("counting", 0.5 * (nd + nn),
                            counting_bound_rhs(BoundaryCase::Dirichlet, consts, r),
                            BoundaryCase::Dirichlet, std::move(inputs),
                            {"lhs = mean of the Dirichlet and Neumann counting functions"});
}

double covered_radius(std::span<const SpectrumWindow> windows) noexcept {
    double best = 0.0;
    for (const auto& w : windows) best = std::max(best, coverage_radius(w));
    return best;
}

BoundCertificate lt_sum_certificate(std::span<const SpectrumWindow> windows, double radius, double p,
                                    const PotentialConstants& consts, BoundaryCase c) {
    const double yp = y_p(p);
    const SpectrumWindow* source = nullptr;
    for (const auto& w : windows)
        if (coverage_radius(w) >= radius) {
            source = &w;
            break;
        }
    if (!source)
        throw Error(ErrorCode::IncompleteCoverage,
                    "no complete window covers |k| <= " + std::to_string(radius));

    double lhs = 0.0;
    int terms = 0;
    bool origin = false;
    for (const auto& pt : source->points) {
        if (std::abs(pt.k) > radius) continue;
        // Lower half-plane zeros pair with 2i, upper half-plane zeros with -2i;
        // a zero on the real axis is counted once.
        const complex shift = pt.k.imag() <= 0.0 ? 2.0 * I : -2.0 * I;
        lhs += pt.multiplicity * std::pow(std::abs(pt.k - shift), -p);
        terms += pt.multiplicity;
        if (pt.k == complex{} || std::abs(pt.k) < 1e-8) origin = true;
    }
    const double qcal = sum_constant(c, consts);
    const double rhs = lt_constant * yp * (1.0 + consts.gamma / pi + qcal);

    auto inputs = base_inputs(consts);
    inputs["p"] = p;
    inputs["radius"] = radius;
    inputs["Y_p"] = yp;
    inputs["C"] = lt_constant;
    inputs["Qcal"] = qcal;
    inputs["terms"] = terms;
    std::vector<std::string> notes{"lhs is a partial sum over located zeros; unverified remainder must be <= margin"};
    if (origin) notes.emplace_back("zero at k = 0 counted once");
    return make_certificate("resonance_sum", lhs, rhs, c, std::move(inputs), std::move(notes));
}

std::vector<BoundCertificate> forbidden_domain_check(std::span<const SpectrumWindow> dirichlet,
                                                     const PotentialConstants& consts) {
    // q_s(x) = s^2 q(s x) with s = gamma has support [0, 1], zeros s k and
    // ||q_s|| = s ||q||.
    const double s = consts.gamma > 0.0 ? consts.gamma : 1.0;
    const double norm = s * consts.norm_l1;
    const double rhs = norm * std::exp(norm);
    auto inputs = base_inputs(consts);
    inputs["scale"] = s;

    std::vector<BoundCertificate> out;
    std::vector<complex> seen;
    for (const auto& w : dirichlet) {
        for (const auto& pt : w.points) {
            if (pt.k.imag() > 0.0) continue;
            const bool duplicate = std::any_of(seen.begin(), seen.end(), [&](complex z) {
                return std::abs(z - pt.k) <= 1e-8 * std::max(1.0, std::abs(z));
            });
            if (duplicate) continue;
            seen.push_back(pt.k);
            const complex ks = s * pt.k;
            auto in = inputs;
            in["k_re"] = pt.k.real();
            in["k_im"] = pt.k.imag();
            out.push_back(make_certificate("forbidden_domain", std::abs(ks) * std::exp(-2.0 * std::abs(ks.imag())),
                                           rhs, BoundaryCase::Dirichlet, std::move(in),
                                           {"checked after rescaling the support to [0, 1]"}));
        }
    }
    if (out.empty())
        out.push_back(make_certificate("forbidden_domain", 0.0, rhs, BoundaryCase::Dirichlet, inputs,
                                       {"no located zero in the closed lower half-plane"}));
    return out;
}

RoucheResult rouche_predicate(const PotentialConstants& consts, double r) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    const double h = consts.Q / std::max(1.0, r);
    const double lhs = consts.norm_l1 * (1.0 + h * std::exp(2.0 * consts.gamma * r + h));
    RoucheResult out;
    out.holds = lhs < 2.0 * r;
    out.part_two = r >= 1.0 && 2.0 * consts.gamma * r <= 1.0 && 2.0 * consts.norm_l1 <= r;
    auto inputs = base_inputs(consts);
    inputs["r"] = r;
    inputs["h"] = h;
    out.certificate = make_certificate("rouche_condition", lhs, 2.0 * r, BoundaryCase::Line, std::move(inputs),
                                       {"predicate only; a failure means the smallness condition does not apply"});
    out.certificate.pass = out.holds;
    out.certificate.informational = true;
    if (out.part_two) out.certificate.notes.emplace_back("part ii applies");
    return out;
}

BoundCertificate single_zero_certificate(const EntireFunction& f, double r, const ZeroFinderOptions& opts) {
    const int n = count_zeros_disk(f, {}, r, opts);
    // A count of 1 in the disk is necessarily a simple zero.
    return make_certificate("single_zero", std::abs(n - 1), 0.0, BoundaryCase::Line,
                            {{"r", r}, {"count", n}}, {"lhs = |N - 1| on the open disk"});
}

double jensen_residual(const EntireFunction& f, complex center, double r, std::span<const SpectralPoint> zeros) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    const double f0 = std::abs(f(center).value);
    if (f0 == 0.0) throw Error(ErrorCode::CenterIsZero, "f vanishes at the center");

    double zero_term = 0.0;
    for (const auto& z : zeros) {
        const double d = std::abs(z.k - center);
        if (std::abs(d - r) < 1e-6 * std::max(1.0, r))
            throw Error(ErrorCode::ZeroOnCircle, "a zero lies on the Jensen circle");
        if (d < 1e-12 * std::max(1.0, r)) throw Error(ErrorCode::CenterIsZero, "a zero lies at the center");
        if (d < r) zero_term += z.multiplicity * std::log(r / d);
    }

    const auto log_abs = [&](double phi) {
        return std::log(std::abs(f(center + std::polar(r, phi)).value));
    };
    const double mean =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(log_abs, 0.0, 2.0 * pi, 20, 1e-13) /
        (2.0 * pi);
    return std::abs(std::log(f0) + zero_term - mean);
}

double jensen_check(const EntireFunction& f, complex center, double r, std::span<const SpectrumWindow> windows) {
    for (const auto& w : windows) {
        // The circle itself must be covered to rule out zeros on it.
        if (coverage_radius(w, center) <= r) continue;
        return jensen_residual(f, center, r, w.points);
    }
    throw Error(ErrorCode::IncompleteCoverage, "no complete window covers the Jensen disk");
}

EgammaWitness egamma_witness(const PiecewisePotential& p, const EgammaGrid& grid) {
    if (p.boundary_case() != BoundaryCase::Line)
        throw Error(ErrorCode::InvalidArgument, "the E_gamma witness is defined for the line case");
    const PiecewisePotential q = canonicalize(p);
    const auto c = constants(q);

    EgammaWitness out;
    out.f0 = c.q0;
    out.lower_ratio = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.real_points; ++j) {
        // Midpoint grid on [-real_max, real_max]; never hits k = 0 for even counts.
        const double k = grid.real_max * (2.0 * (j + 0.5) / grid.real_points - 1.0);
        if (k == 0.0) continue;
        const double ratio = std::abs(evaluate(q, k).w) / (2.0 * std::abs(k));
        if (ratio < out.lower_ratio) {
            out.lower_ratio = ratio;
            out.lower_at = k;
        }
    }

    const Rectangle& g = grid.region;
    for (int a = 0; a < grid.re_points; ++a) {
        for (int b = 0; b < grid.im_points; ++b) {
            const complex k{g.u0 + g.width() * a / std::max(1, grid.re_points - 1),
                            g.v0 + g.height() * b / std::max(1, grid.im_points - 1)};
            const complex ws = evaluate(q, k).w - 2.0 * I * k + c.q0;
            const double env = w_star_envelopes(c, k).q_form;
            const double ratio = env > 0.0 ? std::abs(ws) / env : (std::abs(ws) > 0.0 ? 1e300 : 0.0);
            if (ratio > out.envelope_ratio) {
                out.envelope_ratio = ratio;
                out.envelope_at = k;
            }
        }
    }
    return out;
}

double carleson_constant(const PotentialConstants& c) noexcept {
    return 12.0 / std::log(4.0) * (c.gamma / pi + 1.0 + (std::abs(c.q0) + 3.0 * c.Q) / 4.0);
}

BoundCertificate carleson_box_check(std::span<const SpectrumWindow> windows, double t, double r,
                                    const PotentialConstants& consts) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
    auto inputs = base_inputs(consts);
    inputs["t"] = t;
    inputs["r"] = r;
    const double rhs = carleson_constant(consts) * r;
    inputs["C_f"] = carleson_constant(consts);
    auto mass_in = [&](const SpectrumWindow& w) {
        int mass = 0;
        for (const auto& pt : w.points)
            if (pt.k.imag() <= 0.0 && std::abs(pt.k - I - t) < r) mass += pt.multiplicity;
        return mass;
    };
    // Mass sits at k_n - i with Im k_n <= 0, so for r <= 1 the half-disk
    // cannot be reached and no coverage is needed.
    if (r <= 1.0) {
        int mass = 0;
        for (const auto& w : windows) mass = std::max(mass, mass_in(w));
        return make_certificate("carleson", mass, rhs, BoundaryCase::Line, std::move(inputs),
                                {"r <= 1: half-disk out of reach of the shifted zeros"});
    }

    const Rectangle region{t - r, t + r, 1.0 - r, 0.0};
    for (const auto& w : windows)
        if (covers(w, region)) return make_certificate("carleson", mass_in(w), rhs, BoundaryCase::Line, std::move(inputs));
    throw Error(ErrorCode::IncompleteCoverage, "no complete window covers the Carleson half-disk");
}

SlopeReport asymptotic_slope(std::span<const SpectrumWindow> windows, std::span<const double> radii, double gamma) {
    if (radii.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope fit needs at least two radii");
    SlopeReport out;
    out.expected = 2.0 * gamma / pi;
    out.degenerate = gamma == 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double r : radii) {
        const int n = counting_function(windows, r);
        out.radii.push_back(r);
        out.counts.push_back(n);
        sx += r;
        sy += n;
        sxx += r * r;
        sxy += r * n;
    }
    const double m = static_cast<double>(radii.size());
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw Error(ErrorCode::InvalidArgument, "slope fit needs distinct radii");
    out.slope = (m * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / m;
    out.relative_deviation = out.degenerate ? std::abs(out.slope)
                                            : std::abs(out.slope - out.expected) / out.expected;
    return out;
}

double factorization_check(const PiecewisePotential& p, const Rectangle& grid, int re_points, int im_points) {
    const auto ext = even_extension(p);
    const PiecewisePotential line = canonicalize(ext.potential);
    double worst = 0.0;
    for (int a = 0; a < re_points; ++a) {
        for (int b = 0; b < im_points; ++b) {
            const complex k{grid.u0 + grid.width() * a / std::max(1, re_points - 1),
                            grid.v0 + grid.height() * b / std::max(1, im_points - 1)};
            const auto half = evaluate(p, k);
            const complex product = 2.0 * half.psi0 * half.dpsi0;
            const complex wt = evaluate(line, k).w;
            worst = std::max(worst, std::abs(wt - product) / std::max(std::abs(wt), 1.0));
        }
    }
    return worst;
}

} // namespace resonance
