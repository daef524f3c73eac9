#include "resonance/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "resonance/error.hpp"
#include "resonance/jost.hpp"

namespace resonance {

Rectangle auto_window(const PiecewisePotential& p) {
    const double gamma = constants(p).gamma;
    const double R = gamma > 0.0 ? 25.0 * std::numbers::pi / gamma : 10.0;
    const double depth = gamma > 0.0 ? std::min(R, 40.0 / gamma) : R;
    return {-R, R, -depth, bound_state_ceiling(p) + 1.0};
}

SpectrumResult compute_spectrum(const PiecewisePotential& p, BoundaryCase c,
                                const std::optional<Rectangle>& window, const ZeroFinderOptions& opts) {
    const PiecewisePotential q = p.with_case(c);
    const EntireFunction f = jost_function(q, c);

    SpectrumResult out;
    out.boundary_case = c;
    out.ceiling = bound_state_ceiling(q);
    if (window) {
        out.spectrum = locate_zeros(f, *window, opts);
    } else {
        out.auto_window = true;
        Rectangle rect = auto_window(q);
        for (;;) {
            try {
                out.spectrum = locate_zeros(f, rect, opts);
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Overflow || out.shrink_steps >= 12) throw;
                rect.v0 *= 0.75;
                ++out.shrink_steps;
            }
        }
        if (out.shrink_steps > 0)
            out.notes.push_back("window depth reduced to " + std::to_string(-rect.v0) + " after overflow");
        out.notes.push_back("eigenvalue scan capped at Im k = " + std::to_string(rect.v1) +
                            " (square root of -min q, plus 1)");
    }
    out.spectrum.zero_free_above = out.spectrum.window.v1 > out.ceiling;
    return out;
}

const std::vector<std::string>& certificate_names() {
    static const std::vector<std::string> names{"counting", "resonance_sum", "forbidden", "rouche", "jensen",
                                                "egamma", "carleson", "slope", "factorization", "yp"};
    return names;
}

bool CertifyResult::all_pass() const noexcept {
    return std::all_of(certificates.begin(), certificates.end(),
                       [](const BoundCertificate& c) { return c.pass || c.informational; });
}

namespace {

std::span<const SpectrumWindow> as_span(const SpectrumResult& r) { return {&r.spectrum, 1}; }

bool selected(const CertifyConfig& cfg, std::string_view name) {
    return cfg.selection.empty() ||
           std::find(cfg.selection.begin(), cfg.selection.end(), name) != cfg.selection.end();
}

BoundCertificate jensen_certificate(const EntireFunction& f, const SpectrumResult& s, BoundaryCase c) {
    const complex center{0.5, 0.0};
    double r = std::min(5.0, 0.9 * coverage_radius(s.spectrum, center));
    if (!(r > 0.0)) throw Error(ErrorCode::IncompleteCoverage, "window too small for a Jensen disk");
    for (int attempt = 0;; ++attempt) {
        try {
            const double residual = jensen_residual(f, center, r, s.spectrum.points);
            return make_certificate("jensen", residual, 1e-6, c, {{"center_re", 0.5}, {"r", r}},
                                    {"lhs = |log|f(c)| + sum log(r/|k - c|) - circle mean of log|f||"});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ZeroOnCircle || attempt >= 5) throw;
            r *= 0.97;
        }
    }
}

std::vector<double> slope_radii(double covered) {
    std::vector<double> radii;
    if (covered >= 40.0) {
        for (double r = 10.0; r <= 40.0; r += 2.5) radii.push_back(r);
    } else {
        for (int j = 0; j < 13; ++j) radii.push_back(covered * (0.25 + 0.75 * j / 12.0));
    }
    return radii;
}

} // namespace

CertifyResult certify(const PiecewisePotential& p, BoundaryCase c, const CertifyConfig& cfg) {
    for (const auto& name : cfg.selection)
        if (std::find(certificate_names().begin(), certificate_names().end(), name) == certificate_names().end())
            throw Error(ErrorCode::InvalidArgument, "unknown certificate '" + name + "'");
    for (double pv : cfg.p_values)
        if (!(pv > 1.0)) throw Error(ErrorCode::InvalidArgument, "p must exceed 1");

    const PiecewisePotential q = p.with_case(c);
    const PotentialConstants consts = constants(c == BoundaryCase::Line ? canonicalize(q) : q);
    const bool half_line = c != BoundaryCase::Line;

    CertifyResult out;
    out.spectra.reserve(2);
    out.spectra.push_back(compute_spectrum(q, c, cfg.window, cfg.zeros));
    const SpectrumResult& main = out.spectra.front();
    const auto windows = as_span(main);
    const double covered = covered_radius(windows);
    auto& certs = out.certificates;

    if (selected(cfg, "counting")) {
        if (half_line) {
            const BoundaryCase other = c == BoundaryCase::Dirichlet ? BoundaryCase::Neumann : BoundaryCase::Dirichlet;
            out.spectra.push_back(compute_spectrum(q, other, cfg.window, cfg.zeros));
            const auto& dir = c == BoundaryCase::Dirichlet ? out.spectra[0] : out.spectra[1];
            const auto& neu = c == BoundaryCase::Dirichlet ? out.spectra[1] : out.spectra[0];
            const double cov = std::min(covered, covered_radius(as_span(out.spectra[1])));
            for (double r : cfg.radii) {
                if (r > cov) {
                    out.notes.push_back("counting: r = " + std::to_string(r) + " outside coverage, skipped");
                    continue;
                }
                certs.push_back(counting_certificate(consts, as_span(dir), as_span(neu), r));
            }
        } else {
            for (double r : cfg.radii) {
                if (r > covered) {
                    out.notes.push_back("counting: r = " + std::to_string(r) + " outside coverage, skipped");
                    continue;
                }
                certs.push_back(counting_certificate(consts, windows, r));
            }
        }
    }

    if (selected(cfg, "resonance_sum") && covered > 0.0)
        for (double pv : cfg.p_values) certs.push_back(lt_sum_certificate(windows, covered, pv, consts, c));

    if (selected(cfg, "forbidden") && c == BoundaryCase::Dirichlet)
        for (auto& cert : forbidden_domain_check(windows, consts)) certs.push_back(std::move(cert));

    if (selected(cfg, "rouche") && c == BoundaryCase::Line) {
        const EntireFunction f = jost_function(q, c);
        for (double r : cfg.radii) {
            auto pred = rouche_predicate(consts, r);
            certs.push_back(pred.certificate);
            if (pred.holds || pred.part_two) certs.push_back(single_zero_certificate(f, r, cfg.zeros));
        }
    }

    if (selected(cfg, "jensen")) certs.push_back(jensen_certificate(jost_function(q, c), main, c));

    if (selected(cfg, "egamma") && c == BoundaryCase::Line) {
        EgammaGrid grid;
        const double depth = std::min(5.0, 20.0 / consts.gamma);
        grid.region = {-20.0, 20.0, -depth, depth};
        const auto wit = egamma_witness(q, grid);
        // |w|/(2|k|) -> 1 at large k, where the ratio is only known to rounding.
        certs.push_back(make_certificate("egamma_lower", 1.0, wit.lower_ratio + 1e-12, c,
                                         {{"k_min", wit.lower_at}, {"ratio", wit.lower_ratio}},
                                         {"rhs = min |w(k)|/(2|k|) on the real grid plus a 1e-12 rounding allowance"}));
        certs.push_back(make_certificate("egamma_envelope", wit.envelope_ratio, 1.0, c,
                                         {{"f0", wit.f0}, {"k_re", wit.envelope_at.real()}, {"k_im", wit.envelope_at.imag()}},
                                         {"lhs = max |w - 2ik + f0| / envelope on the complex grid"}));
    }

    if (selected(cfg, "carleson") && c == BoundaryCase::Line) {
        for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            for (int t = -10; t <= 10; t += 2) {
                const Rectangle region{t - r, t + r, 1.0 - r, 0.0};
                if (r > 1.0 && !covers(main.spectrum, region)) continue;
                certs.push_back(carleson_box_check(windows, t, r, consts));
            }
        }
    }

    if (selected(cfg, "slope") && covered > 0.0) {
        const auto radii = slope_radii(covered);
        const auto rep = asymptotic_slope(windows, radii, consts.gamma);
        auto cert = make_certificate("slope", rep.relative_deviation, 0.15, c,
                                     {{"slope", rep.slope}, {"expected", rep.expected},
                                      {"r_min", radii.front()}, {"r_max", radii.back()}},
                                     {"asymptotic statement; informational only"});
        if (rep.degenerate) cert.notes.emplace_back("gamma = 0: degenerate, slope compared with 0");
        cert.informational = true;
        certs.push_back(std::move(cert));
    }

    if (selected(cfg, "factorization") && half_line) {
        const double depth = consts.gamma > 0.0 ? std::min(3.0, 20.0 / consts.gamma) : 3.0;
        const double residual = factorization_check(q, {-10.0, 10.0, -depth, 0.0});
        certs.push_back(make_certificate("factorization", residual, 1e-10, c, {{"depth", depth}},
                                         {"lhs = max relative |w~ - 2 psi(0) psi'(0)| on the grid"}));
    }

    if (selected(cfg, "yp")) {
        for (double pv : cfg.p_values) {
            const double exact = y_p(pv);
            const double quad = y_p_quadrature(pv);
            certs.push_back(make_certificate("yp", std::abs(exact - quad) / exact, 1e-8, c,
                                             {{"p", pv}, {"Y_p", exact}, {"quadrature", quad}},
                                             {"Gamma identity against tanh-sinh quadrature"}));
        }
    }
    return out;
}

} // namespace resonance
