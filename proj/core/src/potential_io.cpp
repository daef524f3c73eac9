#include "resonance/potential_io.hpp"

#include <fstream>
#include <vector>

#include "resonance/error.hpp"

namespace resonance {

nlohmann::json to_json(const PiecewisePotential& p) {
    nlohmann::json j;
    j["case"] = std::string(to_string(p.boundary_case()));
    j["breakpoints"] = std::vector<double>(p.breakpoints().begin(), p.breakpoints().end());
    j["values"] = std::vector<double>(p.values().begin(), p.values().end());
    return j;
}

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* field) {
    if (!j.contains(field))
        throw Error(ErrorCode::Parse, std::string("missing field '") + field + "'");
    const auto& arr = j.at(field);
    if (!arr.is_array())
        throw Error(ErrorCode::Parse, std::string("field '") + field + "' must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number())
            throw Error(ErrorCode::Parse, std::string("field '") + field + "[" +
                                              std::to_string(i) + "]' must be a number");
        out.push_back(arr[i].get<double>());
    }
    return out;
}

} // namespace

PiecewisePotential potential_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorCode::Parse, "potential spec must be a JSON object");
    BoundaryCase c = BoundaryCase::Line;
    if (j.contains("case")) {
        if (!j.at("case").is_string())
            throw Error(ErrorCode::Parse, "field 'case' must be a string");
        c = boundary_case_from_string(j.at("case").get<std::string>());
    }
    auto xs = number_array(j, "breakpoints");
    auto qs = number_array(j, "values");
    try {
        return PiecewisePotential(std::move(xs), std::move(qs), c);
    } catch (const Error& e) {
        throw Error(ErrorCode::Parse, std::string("fields 'breakpoints'/'values': ") + e.what());
    }
}

PiecewisePotential load_potential(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open potential file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
    return potential_from_json(j);
}

void save_potential(const PiecewisePotential& p, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << to_json(p).dump(2) << '\n';
}

} // namespace resonance
