#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "resonance/error.hpp"
#include "resonance/pipeline.hpp"
#include "resonance/report.hpp"

using namespace resonance;
using doctest::Approx;

TEST_CASE("auto window") {
    const auto free_r = auto_window(PiecewisePotential{});
    CHECK(free_r.u1 == 10.0);
    CHECK(free_r.v0 == -10.0);
    CHECK(free_r.v1 == 1.0);

    const auto w = auto_window(PiecewisePotential::constant(-9.0, 0.0, 2.0));
    CHECK(w.u1 == Approx(12.5 * std::numbers::pi));
    CHECK(w.v0 == Approx(-20.0));
    CHECK(w.v1 == Approx(4.0));
}

TEST_CASE("free spectra in all three cases") {
    const auto line = compute_spectrum(PiecewisePotential{}, BoundaryCase::Line);
    REQUIRE(line.spectrum.points.size() == 1);
    CHECK(std::abs(line.spectrum.points[0].k) < 1e-14);
    CHECK(line.spectrum.points[0].kind == SpectralKind::RealResonance);
    CHECK(compute_spectrum(PiecewisePotential{}, BoundaryCase::Dirichlet).spectrum.points.empty());
    CHECK(compute_spectrum(PiecewisePotential{}, BoundaryCase::Neumann).spectrum.points.size() == 1);
}

TEST_CASE("square-well bound states match axis bisection") {
    const auto p = PiecewisePotential::constant(-10.0, 0.0, 1.0, BoundaryCase::Dirichlet);
    const auto s = compute_spectrum(p, BoundaryCase::Dirichlet);
    CHECK(s.spectrum.complete);
    std::vector<double> found;
    for (const auto& pt : s.spectrum.points)
        if (pt.kind == SpectralKind::Eigenvalue) found.push_back(pt.k.imag());
    const auto expected = oracle::dirichlet_well_kappas(10.0, 1.0);
    REQUIRE(found.size() == expected.size());
    for (std::size_t j = 0; j < found.size(); ++j) CHECK(std::abs(found[j] - expected[j]) < 1e-9);

    const auto deep = PiecewisePotential::constant(-90.0, 0.0, 1.5, BoundaryCase::Dirichlet);
    const auto ds = compute_spectrum(deep, BoundaryCase::Dirichlet);
    const auto dk = oracle::dirichlet_well_kappas(90.0, 1.5);
    int eigen = 0;
    for (const auto& pt : ds.spectrum.points) {
        if (pt.kind != SpectralKind::Eigenvalue) continue;
        ++eigen;
        double best = 1e300;
        for (double kappa : dk) best = std::min(best, std::abs(pt.k.imag() - kappa));
        CHECK(best < 1e-9);
    }
    CHECK(eigen == static_cast<int>(dk.size()));
}

TEST_CASE("translation leaves the line spectrum unchanged") {
    const PiecewisePotential p({-0.4, 0.3, 1.0}, {8.0, -5.0});
    const Rectangle r{-12.0, 12.0, -4.0, 3.0};
    const auto a = compute_spectrum(p, BoundaryCase::Line, r);
    const auto b = compute_spectrum(canonicalize(p), BoundaryCase::Line, r);
    CHECK(oracle::same_zeros(a.spectrum.points, b.spectrum.points, r, 1e-9));
}

TEST_CASE("explicit windows propagate overflow, auto windows shrink") {
    const auto p = PiecewisePotential::constant(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(compute_spectrum(p, BoundaryCase::Line, Rectangle{-5.0, 5.0, -400.0, 1.0}), Error);
    const auto s = compute_spectrum(p, BoundaryCase::Line);
    CHECK(s.auto_window);
    CHECK(s.spectrum.complete);
    CHECK(s.spectrum.zero_free_above);
}

TEST_CASE("certify the q = 5 barrier in every case") {
    const auto p = PiecewisePotential::constant(5.0, 0.0, 1.0);
    for (auto c : {BoundaryCase::Line, BoundaryCase::Dirichlet, BoundaryCase::Neumann}) {
        const auto r = certify(p, c, {});
        CHECK(r.all_pass());
        CHECK_FALSE(r.certificates.empty());
        for (const auto& cert : r.certificates)
            if (!cert.informational) CHECK_MESSAGE(cert.pass, cert.id << " lhs=" << cert.lhs << " rhs=" << cert.rhs);
    }
}

TEST_CASE("certify selection and argument checks") {
    const auto p = PiecewisePotential::constant(5.0, 0.0, 1.0);
    CertifyConfig cfg;
    cfg.selection = {"yp"};
    const auto r = certify(p, BoundaryCase::Line, cfg);
    CHECK(r.certificates.size() == cfg.p_values.size());
    for (const auto& c : r.certificates) CHECK(c.id == "yp");

    cfg.selection = {"bogus"};
    CHECK_THROWS_AS(certify(p, BoundaryCase::Line, cfg), Error);
    cfg.selection = {};
    cfg.p_values = {0.9};
    CHECK_THROWS_AS(certify(p, BoundaryCase::Line, cfg), Error);
}

TEST_CASE("small window with p close to 1 passes with a wide margin") {
    CertifyConfig cfg;
    cfg.selection = {"resonance_sum"};
    cfg.p_values = {1.01};
    cfg.window = Rectangle{-2.0, 2.0, -2.0, 2.0};
    const auto r = certify(PiecewisePotential::constant(5.0, 0.0, 1.0), BoundaryCase::Line, cfg);
    REQUIRE(r.certificates.size() == 1);
    CHECK(r.certificates[0].pass);
    CHECK(r.certificates[0].margin > 100.0 * r.certificates[0].lhs);
}

TEST_CASE("reports") {
    const auto s = compute_spectrum(PiecewisePotential{}, BoundaryCase::Line);
    const auto j = to_json(s);
    CHECK(j["case"] == "line");
    CHECK(j["points"].size() == 1);
    CHECK(j["points"][0]["kind"] == "real_resonance");
    CHECK(j["points"][0]["multiplicity"] == 1);

    const auto stairs = staircase_csv(s, PotentialConstants{});
    std::size_t lines = 0;
    for (std::size_t pos = stairs.find('\n'); pos != std::string::npos; pos = stairs.find('\n', pos + 1)) ++lines;
    CHECK(lines == 201);
    CHECK(stairs.find(",0,") == std::string::npos);

    const auto cert = make_certificate("demo", 1.0, 2.0, BoundaryCase::Line, {{"x", 0.1}});
    const auto table = certificate_table(std::span<const BoundCertificate>(&cert, 1));
    CHECK(table.find("pass") != std::string::npos);
    CHECK(to_json(cert)["inputs"]["x"] == 0.1);
    CHECK(scatter_csv(s.spectrum.points).rfind("k_re,k_im,multiplicity,kind\n", 0) == 0);
}

TEST_CASE("certify passes on random potentials in every case") {
    const auto line = oracle::battery(3, BoundaryCase::Line, 77);
    const auto half = oracle::battery(3, BoundaryCase::Dirichlet, 78);
    auto check = [](const PiecewisePotential& p, BoundaryCase c) {
        const auto r = certify(p, c, {});
        for (const auto& cert : r.certificates)
            if (!cert.informational)
                CHECK_MESSAGE(cert.pass, to_string(c) << " " << cert.id << " lhs=" << cert.lhs << " rhs=" << cert.rhs);
    };
    for (const auto& p : line) check(p, BoundaryCase::Line);
    for (const auto& p : half) {
        check(p, BoundaryCase::Dirichlet);
        check(p, BoundaryCase::Neumann);
    }
}
