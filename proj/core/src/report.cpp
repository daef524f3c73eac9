#include "resonance/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "resonance/error.hpp"
#include "resonance/potential.hpp"

namespace resonance {

nlohmann::json to_json(const SpectralPoint& pt) {
    return {{"k_re", pt.k.real()},
            {"k_im", pt.k.imag()},
            {"multiplicity", pt.multiplicity},
            {"kind", std::string(to_string(pt.kind))}};
}

nlohmann::json to_json(const SpectrumResult& s) {
    const auto& w = s.spectrum;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& pt : w.points) points.push_back(to_json(pt));
    return {{"case", std::string(to_string(s.boundary_case))},
            {"window", {w.window.u0, w.window.u1, w.window.v0, w.window.v1}},
            {"auto_window", s.auto_window},
            {"total_count", w.total_count},
            {"complete", w.complete},
            {"zero_free_above", w.zero_free_above},
            {"bound_state_ceiling", s.ceiling},
            {"notes", s.notes},
            {"points", std::move(points)}};
}

nlohmann::json to_json(const BoundCertificate& c) {
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [key, value] : c.inputs) inputs[key] = value;
    return {{"id", c.id},
            {"case", std::string(to_string(c.boundary_case))},
            {"lhs", c.lhs},
            {"rhs", c.rhs},
            {"margin", c.margin},
            {"pass", c.pass},
            {"informational", c.informational},
            {"inputs", std::move(inputs)},
            {"notes", c.notes}};
}

nlohmann::json certificates_to_json(std::span<const BoundCertificate> certs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : certs) out.push_back(to_json(c));
    return out;
}

std::string certificate_table(std::span<const BoundCertificate> certs) {
    std::string out = fmt::format("{:<18} {:<10} {:>24} {:>24} {:>24}  {}\n", "id", "case", "lhs", "rhs",
                                  "margin", "status");
    for (const auto& c : certs) {
        const char* status = c.pass ? "pass" : (c.informational ? "info" : "FAIL");
        out += fmt::format("{:<18} {:<10} {:>24.17g} {:>24.17g} {:>24.17g}  {}\n", c.id,
                           to_string(c.boundary_case), c.lhs, c.rhs, c.margin, status);
    }
    return out;
}

std::string wgrid_csv(const EntireFunction& f, const Rectangle& rect, int re_points, int im_points) {
    std::string out = "k_re,k_im,abs_f\n";
    for (int b = 0; b < im_points; ++b) {
        for (int a = 0; a < re_points; ++a) {
            const complex k{rect.u0 + rect.width() * a / std::max(1, re_points - 1),
                            rect.v0 + rect.height() * b / std::max(1, im_points - 1)};
            double value;
            try {
                value = std::abs(f(k).value);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::Overflow) throw;
                value = std::numeric_limits<double>::infinity();
            }
            out += fmt::format("{:.17g},{:.17g},{:.17g}\n", k.real(), k.imag(), value);
        }
    }
    return out;
}

std::string scatter_csv(std::span<const SpectralPoint> points) {
    std::string out = "k_re,k_im,multiplicity,kind\n";
    for (const auto& pt : points)
        out += fmt::format("{:.17g},{:.17g},{},{}\n", pt.k.real(), pt.k.imag(), pt.multiplicity, to_string(pt.kind));
    return out;
}

std::string staircase_csv(const SpectrumResult& s, const PotentialConstants& consts, int samples) {
    std::string out = "r,count,bound\n";
    const double covered = coverage_radius(s.spectrum);
    if (!(covered > 0.0)) return out;
    const std::span<const SpectrumWindow> windows(&s.spectrum, 1);
    for (int j = 1; j <= samples; ++j) {
        const double r = covered * j / samples;
        out += fmt::format("{:.17g},{},{:.17g}\n", r, counting_function(windows, r),
                           counting_bound_rhs(s.boundary_case, consts, r));
    }
    return out;
}

std::string forbidden_csv(std::span<const SpectralPoint> points, const PotentialConstants& consts) {
    std::string out = "abs_k,abs_im,curve\n";
    const double s = consts.gamma > 0.0 ? consts.gamma : 1.0;
    const double norm = s * consts.norm_l1;
    const double level = norm * std::exp(norm);
    for (const auto& pt : points) {
        if (pt.k.imag() > 0.0) continue;
        const double ak = std::abs(pt.k);
        const double curve = level > 0.0 ? std::max(0.0, 0.5 / s * std::log(s * ak / level))
                                         : std::numeric_limits<double>::infinity();
        out += fmt::format("{:.17g},{:.17g},{:.17g}\n", ak, std::abs(pt.k.imag()), curve);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

} // namespace resonance
