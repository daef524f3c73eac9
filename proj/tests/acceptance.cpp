// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "resonance/bounds.hpp"
#include "resonance/error.hpp"
#include "resonance/jost.hpp"
#include "resonance/neumann.hpp"
#include "resonance/pipeline.hpp"

using namespace resonance;

namespace {

constexpr double pi = std::numbers::pi;
constexpr int battery_size = 50;

struct Outcome {
    bool pass = true;
    std::string detail;
};

ZeroFinderOptions finder() {
    ZeroFinderOptions opts;
    opts.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return opts;
}

double rel(complex a, complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::span<const SpectrumWindow> one(const SpectrumResult& s) { return {&s.spectrum, 1}; }

struct Battery {
    std::vector<PiecewisePotential> line;
    std::vector<PiecewisePotential> half;
    std::vector<SpectrumResult> line_spectra;
    std::vector<SpectrumResult> dirichlet_spectra;
    std::vector<SpectrumResult> neumann_spectra;
    double seconds = 0.0;
};

const Battery& battery() {
    static const Battery b = [] {
        const auto start = std::chrono::steady_clock::now();
        Battery out;
        out.line = oracle::battery(battery_size, BoundaryCase::Line, 1001);
        out.half = oracle::battery(battery_size, BoundaryCase::Dirichlet, 2002);
        for (const auto& p : out.line) out.line_spectra.push_back(compute_spectrum(p, BoundaryCase::Line, {}, finder()));
        for (const auto& p : out.half) {
            out.dirichlet_spectra.push_back(compute_spectrum(p, BoundaryCase::Dirichlet, {}, finder()));
            out.neumann_spectra.push_back(compute_spectrum(p, BoundaryCase::Neumann, {}, finder()));
        }
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("      battery: %d potentials x 3 cases located in %.1f s\n", battery_size, out.seconds);
        return out;
    }();
    return b;
}

void require(Outcome& o, bool ok, const std::string& what) {
    if (!ok && o.pass) o.detail = what;
    o.pass = o.pass && ok;
}

Outcome free_case() {
    Outcome o;
    double worst = 0.0;
    for (double re = -5.0; re <= 5.0; re += 0.5)
        for (double im = -3.0; im <= 3.0; im += 0.5) {
            const complex k{re, im};
            const auto e = evaluate(PiecewisePotential{}, k);
            worst = std::max({worst, std::abs(e.w - 2.0 * complex{0, 1} * k), std::abs(e.psi0 - 1.0),
                              std::abs(e.dpsi0 - complex{0, 1} * k)});
        }
    require(o, worst <= 1e-14, fmt::format("engine deviation {:.3g}", worst));
    const auto line = compute_spectrum(PiecewisePotential{}, BoundaryCase::Line);
    const auto dir = compute_spectrum(PiecewisePotential{}, BoundaryCase::Dirichlet);
    const auto neu = compute_spectrum(PiecewisePotential{}, BoundaryCase::Neumann);
    auto at_origin = [](const SpectrumResult& s) {
        return s.spectrum.complete && s.spectrum.points.size() == 1 && s.spectrum.points[0].multiplicity == 1 &&
               std::abs(s.spectrum.points[0].k) <= 1e-14;
    };
    require(o, at_origin(line), "line spectrum is not {0}");
    require(o, at_origin(neu), "Neumann spectrum is not {0}");
    require(o, dir.spectrum.complete && dir.spectrum.points.empty(), "Dirichlet spectrum is not empty");
    if (o.pass) o.detail = fmt::format("max deviation {:.1g}; spectra {{0}}, {{}}, {{0}}", worst);
    return o;
}

Outcome unitarity() {
    Outcome o;
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    double worst = 0.0;
    const auto pots = oracle::battery(20, BoundaryCase::Line, 303);
    for (const auto& p : pots) {
        const auto q = canonicalize(p);
        for (int j = 0; j < 100; ++j) {
            const double k = u(rng);
            const auto e = evaluate(q, k);
            worst = std::max(worst, std::abs(std::norm(e.w) - 4.0 * k * k - std::norm(e.s)) / std::norm(e.w));
        }
    }
    require(o, worst <= 1e-10, fmt::format("worst relative defect {:.3g}", worst));
    if (o.pass) o.detail = fmt::format("20 x 100 samples, worst relative defect {:.2g}", worst);
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    // The series converges within its term budget only for moderate norms.
    const std::vector<PiecewisePotential> moderate{PiecewisePotential::constant(5.0, 0.0, 1.0),
                                                   PiecewisePotential({0.0, 0.3, 0.7, 1.0}, {6.0, -3.0, 2.0}),
                                                   PiecewisePotential::constant(-10.0, 0.0, 1.0),
                                                   PiecewisePotential({0.0, 0.5, 2.0}, {-2.0, 1.5})};
    double worst_series = 0.0, worst_rk = 0.0;
    for (const auto& p : moderate) {
        const auto q = canonicalize(p);
        for (int a = 0; a < 20; ++a)
            for (int b = 0; b < 20; ++b) {
                const complex k{-10.0 + 20.0 * a / 19.0, -3.0 * b / 19.0};
                const complex w = evaluate(q, k).w;
                worst_series = std::max(worst_series, rel(neumann_wronskian(q, k), w));
                if (a % 4 == 0 && b % 4 == 0) worst_rk = std::max(worst_rk, rel(oracle::rk_jost(q, k).w, w));
            }
    }
    const auto pots = oracle::battery(10, BoundaryCase::Line, 404);
    for (const auto& p : pots) {
        const auto q = canonicalize(p);
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) {
                const complex k{-10.0 + 5.0 * a, -0.75 * b};
                worst_rk = std::max(worst_rk, rel(oracle::rk_jost(q, k).w, evaluate(q, k).w));
            }
    }
    const auto half = oracle::battery(5, BoundaryCase::Neumann, 505);
    for (const auto& p : half)
        for (complex k : {complex{3.0, -1.0}, complex{-7.0, -0.5}, complex{0.5, 1.5}}) {
            const auto e = evaluate(p, k);
            const auto r = oracle::rk_jost(p, k);
            worst_rk = std::max({worst_rk, rel(r.psi0, e.psi0), rel(r.dpsi0, e.dpsi0)});
        }
    require(o, worst_series <= 1e-6, fmt::format("series deviation {:.3g}", worst_series));
    require(o, worst_rk <= 1e-8, fmt::format("Runge-Kutta deviation {:.3g}", worst_rk));
    if (o.pass) o.detail = fmt::format("series {:.2g}, Runge-Kutta {:.2g}", worst_series, worst_rk);
    return o;
}

Outcome jensen() {
    Outcome o;
    const auto& b = battery();
    struct Config {
        const PiecewisePotential* p;
        const SpectrumResult* s;
        BoundaryCase c;
    };
    std::vector<Config> configs;
    for (int j = 0; j < 4; ++j) configs.push_back({&b.line[j], &b.line_spectra[j], BoundaryCase::Line});
    for (int j = 0; j < 3; ++j) configs.push_back({&b.half[j], &b.dirichlet_spectra[j], BoundaryCase::Dirichlet});
    for (int j = 0; j < 3; ++j) configs.push_back({&b.half[j], &b.neumann_spectra[j], BoundaryCase::Neumann});
    double worst = 0.0;
    const complex center{0.5, 0.0};
    for (const auto& cfg : configs) {
        double r = std::min(5.0, 0.9 * coverage_radius(cfg.s->spectrum, center));
        const auto f = jost_function(*cfg.p, cfg.c);
        for (int attempt = 0;; ++attempt) {
            try {
                worst = std::max(worst, jensen_check(f, center, r, one(*cfg.s)));
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ZeroOnCircle || attempt > 5) throw;
                r *= 0.97;
            }
        }
    }
    require(o, worst < 1e-6, fmt::format("residual {:.3g}", worst));
    if (o.pass) o.detail = fmt::format("10 configurations, worst residual {:.2g}", worst);
    return o;
}

Outcome counting() {
    Outcome o;
    const auto& b = battery();
    int certs = 0;
    double min_margin = 1e300;
    auto record = [&](const BoundCertificate& c) {
        ++certs;
        min_margin = std::min(min_margin, c.margin);
        require(o, c.pass && c.margin > 0.0, fmt::format("r = {}: {} > {}", c.inputs.at("r"), c.lhs, c.rhs));
    };
    for (int j = 0; j < battery_size; ++j) {
        const auto& s = b.line_spectra[j];
        require(o, s.spectrum.complete, "incomplete line spectrum");
        const auto consts = constants(canonicalize(b.line[j]));
        for (double r : {1.0, 5.0, 10.0, 20.0})
            if (r <= covered_radius(one(s))) record(counting_certificate(consts, one(s), r));

        const auto& d = b.dirichlet_spectra[j];
        const auto& n = b.neumann_spectra[j];
        require(o, d.spectrum.complete && n.spectrum.complete, "incomplete half-line spectrum");
        const auto hc = constants(b.half[j]);
        for (double r : {1.0, 5.0, 10.0, 20.0})
            if (r <= std::min(covered_radius(one(d)), covered_radius(one(n))))
                record(counting_certificate(hc, one(d), one(n), r));
    }
    if (o.pass) o.detail = fmt::format("{} certificates, smallest margin {:.3g}", certs, min_margin);
    return o;
}

Outcome resonance_sum() {
    Outcome o;
    const auto& b = battery();
    const std::vector<double> ps{1.1, 1.5, 2.0, 3.0, 10.0};
    int certs = 0;
    auto run = [&](const SpectrumResult& s, const PotentialConstants& consts, BoundaryCase c) {
        const double R = covered_radius(one(s));
        for (double p : ps) {
            const auto cert = lt_sum_certificate(one(s), R, p, consts, c);
            ++certs;
            require(o, cert.pass, fmt::format("p = {}: {} > {}", p, cert.lhs, cert.rhs));
        }
    };
    for (int j = 0; j < battery_size; ++j) {
        run(b.line_spectra[j], constants(canonicalize(b.line[j])), BoundaryCase::Line);
        run(b.dirichlet_spectra[j], constants(b.half[j]), BoundaryCase::Dirichlet);
        run(b.neumann_spectra[j], constants(b.half[j]), BoundaryCase::Neumann);
    }
    const auto free_s = compute_spectrum(PiecewisePotential{}, BoundaryCase::Line);
    const auto free_c = lt_sum_certificate(one(free_s), covered_radius(one(free_s)), 2.0, {}, BoundaryCase::Line);
    require(o, std::abs(free_c.lhs - 0.25) <= 1e-15, fmt::format("free lhs {}", free_c.lhs));
    require(o, std::abs(free_c.rhs - 32.0 * pi) <= 1e-12 * 32.0 * pi, fmt::format("free rhs {}", free_c.rhs));
    if (o.pass) o.detail = fmt::format("{} certificates; free case lhs {} rhs {:.6f}", certs, free_c.lhs, free_c.rhs);
    return o;
}

Outcome forbidden_domain() {
    Outcome o;
    const auto& b = battery();
    int certs = 0;
    for (int j = 0; j < battery_size; ++j) {
        for (const auto& c : forbidden_domain_check(one(b.dirichlet_spectra[j]), constants(b.half[j]))) {
            ++certs;
            require(o, c.pass, fmt::format("potential {}: {} > {}", j, c.lhs, c.rhs));
        }
    }
    // The reduction to gamma = 1: zeros of s^2 q(s x) are s times the zeros of q.
    double worst = 0.0;
    int compared = 0;
    for (int j = 0; j < 3; ++j) {
        const auto& p = b.half[j];
        const double s = constants(p).gamma;
        const Rectangle w{-12.0, 12.0, -std::min(6.0, 20.0 / s), 1.0};
        const Rectangle ws{s * w.u0, s * w.u1, s * w.v0, s * w.v1};
        const auto a = locate_zeros(jost_function(p, BoundaryCase::Dirichlet), w, finder());
        const auto z = locate_zeros(jost_function(rescaled(p, s), BoundaryCase::Dirichlet), ws, finder());
        require(o, a.complete && z.complete && a.total_count == z.total_count, "scaled counts differ");
        for (const auto& pt : a.points) {
            double best = 1e300;
            for (const auto& qt : z.points) best = std::min(best, std::abs(s * pt.k - qt.k));
            worst = std::max(worst, best);
            ++compared;
        }
    }
    require(o, worst <= 1e-8, fmt::format("scaling mismatch {:.3g}", worst));
    if (o.pass) o.detail = fmt::format("{} certificates; scaling checked on {} zeros, worst {:.2g}", certs, compared, worst);
    return o;
}

Outcome single_zero() {
    Outcome o;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> len(0.05, 0.6);
    std::uniform_real_distribution<double> val(-0.4, 0.4);
    int holding = 0;
    for (int j = 0; j < 20; ++j) {
        const double a = len(rng);
        const PiecewisePotential p({0.0, a, a + len(rng)}, {val(rng), val(rng)});
        const auto consts = constants(p);
        for (double r : {1.0, 2.0}) {
            const auto pred = rouche_predicate(consts, r);
            if (!pred.holds && !pred.part_two) continue;
            ++holding;
            const auto cert = single_zero_certificate(jost_function(p), r, finder());
            require(o, cert.pass, fmt::format("potential {} r = {}: {} zeros", j, r, cert.inputs.at("count")));
        }
    }
    require(o, holding >= 20, fmt::format("smallness held in only {} cases", holding));
    if (o.pass) o.detail = fmt::format("{} (potential, radius) pairs satisfy the condition, each with one simple zero", holding);
    return o;
}

Outcome factorization() {
    Outcome o;
    const auto& b = battery();
    double worst = 0.0;
    int compared = 0;
    for (int j = 0; j < 10; ++j) {
        const auto& p = b.half[j];
        const double gamma = constants(p).gamma;
        const double depth = std::min(3.0, 20.0 / gamma);
        worst = std::max(worst, factorization_check(p, {-10.0, 10.0, -depth, 0.0}));

        const Rectangle w{-10.0, 10.0, -depth, bound_state_ceiling(p) + 1.0};
        const auto ext = even_extension(p).potential;
        const auto line = locate_zeros(jost_function(ext, BoundaryCase::Line), w, finder());
        const auto dir = locate_zeros(jost_function(p, BoundaryCase::Dirichlet), w, finder());
        const auto neu = locate_zeros(jost_function(p, BoundaryCase::Neumann), w, finder());
        auto both = dir.points;
        both.insert(both.end(), neu.points.begin(), neu.points.end());
        require(o, line.complete && dir.complete && neu.complete, "incomplete spectrum");
        require(o, line.total_count == dir.total_count + neu.total_count,
                fmt::format("potential {}: {} != {} + {}", j, line.total_count, dir.total_count, neu.total_count));
        require(o, oracle::same_zeros(line.points, both, w, 1e-8), fmt::format("potential {}: zero sets differ", j));
        compared += line.total_count;
    }
    require(o, worst < 1e-10, fmt::format("residual {:.3g}", worst));
    if (o.pass) o.detail = fmt::format("residual {:.2g}; {} zeros matched", worst, compared);
    return o;
}

Outcome slope() {
    Outcome o;
    const auto p = PiecewisePotential::constant(20.0, 0.0, 1.0);
    const auto s = compute_spectrum(p, BoundaryCase::Line, {}, finder());
    std::vector<double> radii;
    for (double r = 10.0; r <= 40.0; r += 2.5) radii.push_back(r);
    require(o, covered_radius(one(s)) >= 40.0, "window does not reach r = 40");
    const auto rep = asymptotic_slope(one(s), radii, 1.0);
    require(o, rep.relative_deviation < 0.15, fmt::format("slope {:.4f}", rep.slope));
    if (o.pass) o.detail = fmt::format("slope {:.4f} vs {:.4f}, deviation {:.1f}%", rep.slope, rep.expected,
                                       100.0 * rep.relative_deviation);
    return o;
}

Outcome yp() {
    Outcome o;
    std::vector<double> ps;
    for (double p = 1.05 + 1e-9; p < 50.0; p *= 1.05) ps.push_back(p);
    double worst = 0.0;
    for (double p : ps) worst = std::max(worst, std::abs(y_p(p) - y_p_quadrature(p)) / y_p(p));
    require(o, worst <= 1e-8, fmt::format("quadrature mismatch {:.3g}", worst));
    require(o, std::abs(y_p(2.0) - pi) <= 1e-12, "Y_2 != pi");
    for (std::size_t j = 1; j + 1 < ps.size(); ++j) {
        require(o, y_p(ps[j + 1]) < y_p(ps[j]), fmt::format("not decreasing at {}", ps[j]));
        const double left = (y_p(ps[j]) - y_p(ps[j - 1])) / (ps[j] - ps[j - 1]);
        const double right = (y_p(ps[j + 1]) - y_p(ps[j])) / (ps[j + 1] - ps[j]);
        require(o, right > left, fmt::format("not convex at {}", ps[j]));
    }
    if (o.pass) o.detail = fmt::format("{} exponents, worst mismatch {:.2g}", ps.size(), worst);
    return o;
}

Outcome carleson() {
    Outcome o;
    const auto& b = battery();
    int boxes = 0, small = 0;
    auto sweep = [&](const SpectrumResult& s, const PotentialConstants& consts) {
        for (double r : {0.5, 1.0, 2.0, 5.0, 10.0})
            for (int t = -10; t <= 10; t += 2) {
                if (r > 1.0 && !covers(s.spectrum, {t - r, t + r, 1.0 - r, 0.0})) continue;
                const auto c = carleson_box_check(one(s), t, r, consts);
                ++boxes;
                require(o, c.pass, fmt::format("t = {} r = {}: {} > {}", t, r, c.lhs, c.rhs));
                if (r <= 1.0) {
                    ++small;
                    require(o, c.lhs == 0.0, fmt::format("r = {} box holds mass", r));
                }
            }
    };
    for (int j = 0; j < battery_size; ++j) sweep(b.line_spectra[j], constants(canonicalize(b.line[j])));
    const auto p = PiecewisePotential::constant(20.0, 0.0, 1.0);
    sweep(compute_spectrum(p, BoundaryCase::Line, {}, finder()), constants(p));
    if (o.pass) o.detail = fmt::format("{} boxes, {} with r <= 1 all empty", boxes, small);
    return o;
}

} // namespace

int main() {
    struct Criterion {
        std::string name;
        std::function<Outcome()> run;
        double budget;  // seconds
    };
    const double none = 1e9;
    const std::vector<Criterion> criteria{
        {"free-case exactness", free_case, 1.0},
        {"unitarity identity", unitarity, 10.0},
        {"oracle equivalence", oracle_equivalence, 60.0},
        {"Jensen identity", jensen, 60.0},
        {"counting bounds", counting, 600.0},
        {"resonance sums", resonance_sum, 300.0},
        {"forbidden domain", forbidden_domain, none},
        {"single zero under smallness", single_zero, none},
        {"even-extension factorization", factorization, none},
        {"asymptotic slope", slope, 300.0},
        {"Y_p", yp, none},
        {"Carleson boxes", carleson, none},
    };
    try {
        battery();
    } catch (const std::exception& e) {
        std::printf("FAIL battery spectra: %s\n", e.what());
        return 1;
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        require(o, secs < criteria[i].budget, fmt::format("over the {} s budget", criteria[i].budget));
        std::printf("%s %2zu %-30s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
