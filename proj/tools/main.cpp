// resonance: spectra and certificates for 1D Schrodinger operators with
// compactly supported piecewise-constant potentials.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "resonance/error.hpp"
#include "resonance/jost.hpp"
#include "resonance/pipeline.hpp"
#include "resonance/potential_io.hpp"
#include "resonance/report.hpp"

namespace fs = std::filesystem;
using namespace resonance;

namespace {

enum Exit : int {
    ok = 0,
    failure = 1,
    parse_error = 2,
    incomplete_coverage = 3,
    overflow = 4,
    failed_certificate = 5,
};

struct Config {
    std::string potential;
    std::string boundary;
    std::string window = "auto";
    double tol = 1e-10;
    std::string certify = "all";
    std::vector<double> p_values{1.1, 1.5, 2.0, 3.0, 10.0};
    std::vector<double> radii{1.0, 5.0, 10.0, 20.0};
    std::string out = ".";
    int jobs = 1;
    int wgrid = 0;
};

std::optional<Rectangle> parse_window(const std::string& text) {
    if (text == "auto") return std::nullopt;
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        std::size_t used = 0;
        double x;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw Error(ErrorCode::Parse, "--window: '" + item + "' is not a number");
        v.push_back(x);
    }
    if (v.size() != 4) throw Error(ErrorCode::Parse, "--window expects u0,u1,v0,v1 or auto");
    const Rectangle r{v[0], v[1], v[2], v[3]};
    if (!(r.u1 > r.u0 && r.v1 > r.v0)) throw Error(ErrorCode::Parse, "--window needs u0 < u1 and v0 < v1");
    return r;
}

std::uint64_t seed_from_env() {
    const char* s = std::getenv("RESONANCE_SEED");
    if (!s || !*s) return 0;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "RESONANCE_SEED must be a non-negative integer");
    }
}

struct Job {
    PiecewisePotential potential;
    BoundaryCase boundary;
    std::optional<Rectangle> window;
    ZeroFinderOptions zeros;
    fs::path out;
};

Job prepare(const Config& cfg) {
    Job job;
    job.potential = load_potential(cfg.potential);
    job.boundary = cfg.boundary.empty() ? job.potential.boundary_case() : boundary_case_from_string(cfg.boundary);
    job.potential = job.potential.with_case(job.boundary);
    job.window = parse_window(cfg.window);
    if (!(cfg.tol > 0.0)) throw Error(ErrorCode::Parse, "--tol must be positive");
    if (cfg.jobs < 1) throw Error(ErrorCode::Parse, "--jobs must be at least 1");
    job.zeros.tol = cfg.tol;
    job.zeros.jobs = cfg.jobs;
    job.zeros.seed = seed_from_env();
    job.out = cfg.out;
    fs::create_directories(job.out);
    return job;
}

PotentialConstants constants_for(const Job& job) {
    return constants(job.boundary == BoundaryCase::Line ? canonicalize(job.potential) : job.potential);
}

int run_spectrum(const Config& cfg) {
    const Job job = prepare(cfg);
    const auto result = compute_spectrum(job.potential, job.boundary, job.window, job.zeros);
    write_text(job.out / "spectrum.json", to_json(result).dump(2));
    if (cfg.wgrid > 1)
        write_text(job.out / "wgrid.csv",
                   wgrid_csv(jost_function(job.potential, job.boundary), result.spectrum.window, cfg.wgrid, cfg.wgrid));
    if (!result.spectrum.complete) {
        std::cerr << fmt::format("incomplete: located multiplicities do not add up to the count {}\n",
                                 result.spectrum.total_count);
        return incomplete_coverage;
    }
    std::cout << fmt::format("{} zeros in [{}, {}] x [{}, {}]\n", result.spectrum.total_count,
                             result.spectrum.window.u0, result.spectrum.window.u1, result.spectrum.window.v0,
                             result.spectrum.window.v1);
    return ok;
}

int run_certify(const Config& cfg) {
    const Job job = prepare(cfg);
    CertifyConfig cc;
    if (cfg.certify != "all") {
        std::stringstream ss(cfg.certify);
        for (std::string item; std::getline(ss, item, ',');) cc.selection.push_back(item);
    }
    for (double p : cfg.p_values)
        if (!(p > 1.0)) throw Error(ErrorCode::Parse, "p must exceed 1 (Y_p diverges), got " + fmt::format("{}", p));
    cc.p_values = cfg.p_values;
    cc.radii = cfg.radii;
    cc.window = job.window;
    cc.zeros = job.zeros;

    CertifyResult result;
    try {
        result = certify(job.potential, job.boundary, cc);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::Parse, e.what());
        throw;
    }
    write_text(job.out / "certificates.json", certificates_to_json(result.certificates).dump(2));
    std::string table = certificate_table(result.certificates);
    for (const auto& note : result.notes) table += "note: " + note + "\n";
    write_text(job.out / "certificates.txt", table);
    std::cout << table;
    if (!result.spectra.front().spectrum.complete) return incomplete_coverage;
    return result.all_pass() ? ok : failed_certificate;
}

int run_plotdata(const Config& cfg) {
    const Job job = prepare(cfg);
    const auto result = compute_spectrum(job.potential, job.boundary, job.window, job.zeros);
    const auto consts = constants_for(job);
    write_text(job.out / "scatter.csv", scatter_csv(result.spectrum.points));
    write_text(job.out / "staircase.csv", staircase_csv(result, consts));
    write_text(job.out / "forbidden.csv", forbidden_csv(result.spectrum.points, consts));
    return result.spectrum.complete ? ok : incomplete_coverage;
}

int exit_code_for(const Error& e, bool explicit_window) {
    switch (e.code()) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument: return parse_error;
    case ErrorCode::IncompleteCoverage: return incomplete_coverage;
    case ErrorCode::Overflow: return explicit_window ? overflow : failure;
    default: return failure;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonances and eigenvalues of 1D Schrodinger operators with piecewise-constant potentials"};
    app.require_subcommand(1);
    Config cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--potential", cfg.potential, "potential spec (JSON)")->required();
        sub->add_option("--case", cfg.boundary, "line, dirichlet or neumann (default: from the file)");
        sub->add_option("--window", cfg.window, "u0,u1,v0,v1 or auto");
        sub->add_option("--tol", cfg.tol, "Newton tolerance on refined zeros");
        sub->add_option("--out", cfg.out, "output directory");
        sub->add_option("--jobs", cfg.jobs, "worker threads");
    };

    auto* spectrum = app.add_subcommand("spectrum", "locate all zeros in the window");
    add_common(spectrum);
    spectrum->add_option("--wgrid", cfg.wgrid, "also write an N x N |f| grid to wgrid.csv");

    auto* cert = app.add_subcommand("certify", "check the bounds against the computed spectrum");
    add_common(cert);
    cert->add_option("--certify", cfg.certify, "comma-separated certificate list or all");
    cert->add_option("--p", cfg.p_values, "exponents for the resonance sum")->delimiter(',');
    cert->add_option("--radii", cfg.radii, "radii for counting bounds")->delimiter(',');

    auto* plot = app.add_subcommand("plotdata", "write scatter, staircase and forbidden-domain CSVs");
    add_common(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_error;
    }

    const bool explicit_window = cfg.window != "auto";
    try {
        if (spectrum->parsed()) return run_spectrum(cfg);
        if (cert->parsed()) return run_certify(cfg);
        return run_plotdata(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e, explicit_window);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
}
