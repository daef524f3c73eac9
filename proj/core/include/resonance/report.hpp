#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "resonance/bounds.hpp"
#include "resonance/pipeline.hpp"

namespace resonance {

nlohmann::json to_json(const SpectralPoint& pt);
nlohmann::json to_json(const SpectrumResult& s);
nlohmann::json to_json(const BoundCertificate& c);
nlohmann::json certificates_to_json(std::span<const BoundCertificate> certs);

/// Fixed-width table: id, case, lhs, rhs, margin, status.
std::string certificate_table(std::span<const BoundCertificate> certs);

/// k_re,k_im,abs_f over a regular grid of the rectangle.
std::string wgrid_csv(const EntireFunction& f, const Rectangle& rect, int re_points, int im_points);
/// k_re,k_im,multiplicity,kind
std::string scatter_csv(std::span<const SpectralPoint> points);
/// r,count,bound: counting function against the counting-bound RHS.
std::string staircase_csv(const SpectrumResult& s, const PotentialConstants& consts, int samples = 200);
/// abs_k,abs_im,curve: zeros with Im k <= 0 and the forbidden-domain
/// threshold |Im k| = log(|k| / (||q|| e^{||q||}))/2 at the same |k|.
std::string forbidden_csv(std::span<const SpectralPoint> points, const PotentialConstants& consts);

/// Writes text followed by a trailing newline if missing.
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace resonance
