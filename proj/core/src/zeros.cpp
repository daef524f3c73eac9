#include "resonance/zeros.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <tuple>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "resonance/error.hpp"

namespace resonance {

double Rectangle::diameter() const noexcept { return std::hypot(width(), height()); }

bool Rectangle::contains(complex z, double margin) const noexcept {
    return z.real() >= u0 - margin && z.real() <= u1 + margin && z.imag() >= v0 - margin &&
           z.imag() <= v1 + margin;
}

bool Rectangle::contains(const Rectangle& o) const noexcept {
    return o.u0 >= u0 && o.u1 <= u1 && o.v0 >= v0 && o.v1 <= v1;
}

Rectangle Rectangle::dilated(double factor) const noexcept {
    const complex c = center();
    const double hw = 0.5 * width() * factor, hh = 0.5 * height() * factor;
    return {c.real() - hw, c.real() + hw, c.imag() - hh, c.imag() + hh};
}

std::string_view to_string(SpectralKind kind) noexcept {
    switch (kind) {
    case SpectralKind::Eigenvalue: return "eigenvalue";
    case SpectralKind::Resonance: return "resonance";
    case SpectralKind::RealResonance: return "real_resonance";
    case SpectralKind::Antibound: return "antibound";
    }
    return "resonance";
}

namespace {

constexpr complex I{0.0, 1.0};
constexpr double two_pi = 2.0 * std::numbers::pi;

std::uint64_t splitmix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_rect(const Rectangle& r, std::uint64_t seed) noexcept {
    std::uint64_t h = splitmix(seed);
    for (double v : {r.u0, r.u1, r.v0, r.v1}) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof v);
        std::memcpy(&bits, &v, sizeof bits);
        h = splitmix(h ^ bits);
    }
    return h;
}

struct ContourSums {
    complex count;   // integral of f'/f dz
    complex moment;  // integral of z f'/f dz
};

// Adaptive Gauss-Kronrod (7, 15) on straight segments, integrating f'/f and
// z f'/f together. Any node closer than edge_eps to a zero (Newton distance
// |f|/|f'|) aborts with ZeroOnContour.
class ContourIntegrator {
public:
    ContourIntegrator(const EntireFunction& f, double edge_eps) : f_(f), edge_eps_(edge_eps) {}

    ContourSums segment(complex a, complex b, double tol, double panel) {
        ContourSums total{};
        const double len = std::abs(b - a);
        if (len == 0.0) return total;
        const int panels = std::max(1, static_cast<int>(std::ceil(len / panel)));
        const double tol_per_length = tol / len;
        for (int j = 0; j < panels; ++j) {
            const complex za = a + (b - a) * (static_cast<double>(j) / panels);
            const complex zb = a + (b - a) * (static_cast<double>(j + 1) / panels);
            adapt(za, zb, tol_per_length, total, 0);
        }
        return total;
    }

private:
    static constexpr int max_depth = 48;
    static constexpr long max_evaluations = 4'000'000;

    complex log_derivative(complex z, double& distance) {
        if (++evaluations_ > max_evaluations)
            throw Error(ErrorCode::QuadratureNotConverged, "contour integral exceeded the evaluation budget");
        const FunctionValue v = f_(z);
        const double af = std::abs(v.value), ad = std::abs(v.derivative);
        if (af == 0.0 || af < edge_eps_ * ad)
            throw Error(ErrorCode::ZeroOnContour,
                        "zero within " + std::to_string(af / ad) + " of the contour near (" +
                            std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
        distance = std::min(distance, af / ad);
        return v.derivative / v.value;
    }

    void adapt(complex a, complex b, double tol_per_length, ContourSums& out, int depth) {
        using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
        using gauss = boost::math::quadrature::gauss<double, 7>;
        const auto& xk = kronrod::abscissa();
        const auto& wk = kronrod::weights();
        const auto& wg = gauss::weights();

        const complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
        complex k_count{}, k_moment{}, g_count{};
        double magnitude = 0.0;
        double distance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < xk.size(); ++i) {
            const double x = xk[i];
            complex sum_g, sum_zg;
            if (x == 0.0) {
                sum_g = log_derivative(mid, distance);
                sum_zg = mid * sum_g;
            } else {
                const complex zp = mid + half * x, zm = mid - half * x;
                const complex gp = log_derivative(zp, distance), gm = log_derivative(zm, distance);
                sum_g = gp + gm;
                sum_zg = zp * gp + zm * gm;
            }
            k_count += wk[i] * sum_g;
            magnitude += wk[i] * std::abs(sum_g);
            k_moment += wk[i] * sum_zg;
            if (i % 2 == 0) g_count += wg[i / 2] * sum_g;
        }
        k_count *= half;
        k_moment *= half;
        g_count *= half;

        const double len = std::abs(b - a);
        // f'/f inherits cancellation noise from f, worst near zeros and deep in
        // the lower half-plane. A panel much shorter than the distance to the
        // nearest zero is resolved by the 15-point rule regardless of |K - G|.
        const double floor = 1e-9 * magnitude * std::abs(half);
        if (std::abs(k_count - g_count) <= std::max(tol_per_length * len, floor) || len < 0.02 * distance) {
            out.count += k_count;
            out.moment += k_moment;
            return;
        }
        if (depth >= max_depth)
            throw Error(ErrorCode::QuadratureNotConverged, "contour panel refinement exceeded depth limit");
        adapt(a, mid, tol_per_length, out, depth + 1);
        adapt(mid, b, tol_per_length, out, depth + 1);
    }

    const EntireFunction& f_;
    double edge_eps_;
    long evaluations_ = 0;
};

ContourCount integrate_rectangle(const EntireFunction& f, const Rectangle& r,
                                 const ZeroFinderOptions& opts) {
    if (!(r.u1 > r.u0 && r.v1 > r.v0))
        throw Error(ErrorCode::InvalidArgument, "degenerate rectangle");
    const complex c[4] = {{r.u0, r.v0}, {r.u1, r.v0}, {r.u1, r.v1}, {r.u0, r.v1}};

    // Tighten the panels until two consecutive passes agree on an integer.
    double tol = 1e-7 * two_pi;
    double panel = opts.initial_panel;
    int previous = std::numeric_limits<int>::min();
    complex raw{};
    for (int pass = 0; pass < 5; ++pass) {
        ContourIntegrator integ(f, opts.edge_eps);
        ContourSums sums{};
        for (int e = 0; e < 4; ++e) {
            const auto s = integ.segment(c[e], c[(e + 1) % 4], tol, panel);
            sums.count += s.count;
            sums.moment += s.moment;
        }
        raw = sums.count / (two_pi * I);
        const double n = std::round(raw.real());
        const bool integral = std::abs(raw.real() - n) <= 0.1 && std::abs(raw.imag()) <= 0.1;
        if (integral && static_cast<int>(n) == previous) {
            ContourCount out;
            out.count = static_cast<int>(n);
            out.raw = raw;
            out.first_moment = sums.moment / (two_pi * I);
            out.contour = r;
            return out;
        }
        previous = integral ? static_cast<int>(n) : std::numeric_limits<int>::min();
        tol *= 1e-2;
        panel *= 0.5;
    }
    throw Error(ErrorCode::QuadratureNotConverged,
                "argument-principle integral did not settle on an integer (last value " +
                    std::to_string(raw.real()) + " + " + std::to_string(raw.imag()) + "i)");
}

} // namespace

ContourCount count_zeros(const EntireFunction& f, const Rectangle& rect, const ZeroFinderOptions& opts) {
    std::mt19937_64 rng(hash_rect(rect, opts.seed));
    std::uniform_real_distribution<double> factor(1.0 + 1e-4, 1.0 + 1e-3);
    Rectangle contour = rect;
    for (int attempt = 0;; ++attempt) {
        try {
            auto out = integrate_rectangle(f, contour, opts);
            out.dilations = attempt;
            return out;
        } catch (const Error& e) {
            const bool retry = e.code() == ErrorCode::ZeroOnContour ||
                               e.code() == ErrorCode::QuadratureNotConverged;
            if (!retry || attempt >= opts.max_dilations) throw;
            contour = contour.dilated(factor(rng));
        }
    }
}

namespace {

struct DiskSums {
    int count = 0;
    complex offset_sum;  // sum of (z_k - center) over the zeros inside
};

DiskSums disk_sums(const EntireFunction& f, complex center, double radius, const ZeroFinderOptions& opts) {
    if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
    // Trapezoid rule converges geometrically on circles; double until stable.
    const double eps = std::min(opts.edge_eps, 1e-3 * radius);
    int previous = std::numeric_limits<int>::min();
    for (int m = 32; m <= (1 << 14); m *= 2) {
        complex sum{}, moment{};
        for (int j = 0; j < m; ++j) {
            const complex u = std::polar(1.0, two_pi * j / m);
            const FunctionValue v = f(center + radius * u);
            const double af = std::abs(v.value);
            if (af == 0.0 || af < eps * std::abs(v.derivative))
                throw Error(ErrorCode::ZeroOnCircle, "zero within " + std::to_string(eps) + " of the circle");
            const complex g = v.derivative / v.value * u;
            sum += g;
            moment += g * u;
        }
        const complex raw = sum * (radius / m);
        const double n = std::round(raw.real());
        const bool integral = std::abs(raw.real() - n) <= 0.1 && std::abs(raw.imag()) <= 0.1;
        if (integral && static_cast<int>(n) == previous) return {previous, moment * (radius * radius / m)};
        previous = integral ? static_cast<int>(n) : std::numeric_limits<int>::min();
    }
    throw Error(ErrorCode::QuadratureNotConverged, "circle count did not converge");
}

} // namespace

int count_zeros_disk(const EntireFunction& f, complex center, double radius, const ZeroFinderOptions& opts) {
    return disk_sums(f, center, radius, opts).count;
}

SpectralKind classify(complex k, double axis_tol) noexcept {
    if (std::abs(k.imag()) <= axis_tol) return SpectralKind::RealResonance;
    if (std::abs(k.real()) <= axis_tol)
        return k.imag() > 0.0 ? SpectralKind::Eigenvalue : SpectralKind::Antibound;
    return SpectralKind::Resonance;
}

std::vector<SpectralPoint> sorted_by_modulus(std::vector<SpectralPoint> points) {
    std::sort(points.begin(), points.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        return std::make_tuple(std::abs(a.k), a.k.real(), a.k.imag()) <
               std::make_tuple(std::abs(b.k), b.k.real(), b.k.imag());
    });
    return points;
}

namespace {

struct Box {
    Rectangle rect;
    int count = 0;
    complex moment;
};

class Locator {
public:
    Locator(const EntireFunction& f, const ZeroFinderOptions& opts)
        : f_(f), opts_(opts), cluster_diameter_(std::max(64.0 * opts.tol, 1e-6)) {}

    // Either resolves the box into points or returns its children.
    std::vector<Box> process(const Box& box, std::vector<SpectralPoint>& points) const {
        if (box.count == 0) return {};
        if (box.count == 1) {
            complex z = box.moment;
            if (!box.rect.contains(z)) z = box.rect.center();
            if (newton(z, 1, box.rect) && box.rect.contains(z, 1e-12 * (1.0 + std::abs(z)))) {
                points.push_back(make_point(z, box.count));
                return {};
            }
        }
        if (box.count > 1 && box.count <= 8) {
            // A single multiple zero: modified Newton from the centroid, then
            // a disk count must account for the whole box.
            complex z = box.moment / static_cast<double>(box.count);
            if (box.rect.contains(z) && newton(z, box.count, box.rect) && box.rect.contains(z) &&
                disk_multiplicity(z) == box.count) {
                points.push_back(make_point(z, box.count, box.count));
                return {};
            }
        }
        if (box.rect.diameter() < cluster_diameter_) {
            complex z = box.moment / static_cast<double>(box.count);
            if (!newton(z, box.count, box.rect)) z = box.moment / static_cast<double>(box.count);
            points.push_back(make_point(z, box.count));
            return {};
        }
        return split(box);
    }

private:
    // Converges when the step drops below tol, or when it stalls at the noise
    // floor of f (steps stop shrinking quadratically) below 1e-7 |z|_1.
    // Gives up once the iterate wanders more than a box diameter away.
    bool newton(complex& z, int multiplicity, const Rectangle& near) const {
        const Rectangle fence = near.dilated(3.0);
        double previous = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 60; ++it) {
            const FunctionValue v = f_(z);
            if (v.value == 0.0) return true;
            if (v.derivative == 0.0) return false;
            const complex step = static_cast<double>(multiplicity) * v.value / v.derivative;
            const double size = std::abs(step);
            if (size < opts_.tol) {
                z -= step;
                return true;
            }
            if (size < 1e-7 * std::max(1.0, std::abs(z)) && size > 0.25 * previous) return true;
            z -= step;
            if (!fence.contains(z)) return false;
            previous = size;
        }
        return false;
    }

    // Zeros in a small disk around a refined root; 0 when no radius worked.
    // For a cluster, z moves to the mean of its zeros, which stays well
    // conditioned when the individual zeros are not.
    int disk_multiplicity(complex& z) const {
        // The disk must clear the noise floor |f|/|f'| left at the refined root.
        const FunctionValue v = f_(z);
        const double noise = v.derivative != 0.0 ? std::abs(v.value / v.derivative) : 0.0;
        double radius = std::max(8.0 * opts_.tol, 64.0 * noise);
        for (int attempt = 0; attempt < 4; ++attempt, radius *= 8.0) {
            try {
                const DiskSums d = disk_sums(f_, z, radius, opts_);
                if (d.count > 1) z += d.offset_sum / static_cast<double>(d.count);
                if (d.count > 0) return d.count;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::Overflow) throw;
            }
        }
        return 0;
    }

    SpectralPoint make_point(complex z, int box_count, int multiplicity = 0) const {
        if (multiplicity == 0) multiplicity = disk_multiplicity(z);
        SpectralPoint pt;
        pt.k = z;
        pt.multiplicity = multiplicity > 0 ? multiplicity : box_count;
        pt.kind = classify(z, std::max(1e3 * opts_.tol, 1e-8) * std::max(1.0, std::abs(z)));
        return pt;
    }

    std::vector<Box> split(const Box& box) const {
        const Rectangle& r = box.rect;
        std::mt19937_64 rng(hash_rect(r, opts_.seed ^ 0x5a5a5a5aULL));
        std::uniform_real_distribution<double> frac(0.42, 0.58);
        for (int attempt = 0; attempt < 8; ++attempt) {
            double su = r.u0 + frac(rng) * r.width();
            double sv = r.v0 + frac(rng) * r.height();
            // Zeros cluster on both axes; never cut exactly along them.
            if (std::abs(su) < 1e-9 * r.width()) su += 1e-3 * r.width();
            if (std::abs(sv) < 1e-9 * r.height()) sv += 1e-3 * r.height();

            std::vector<Rectangle> parts;
            if (r.width() > 1.5 * r.height()) {
                parts = {{r.u0, su, r.v0, r.v1}, {su, r.u1, r.v0, r.v1}};
            } else if (r.height() > 1.5 * r.width()) {
                parts = {{r.u0, r.u1, r.v0, sv}, {r.u0, r.u1, sv, r.v1}};
            } else {
                parts = {{r.u0, su, r.v0, sv}, {su, r.u1, r.v0, sv},
                         {r.u0, su, sv, r.v1}, {su, r.u1, sv, r.v1}};
            }

            std::vector<Box> children;
            int total = 0;
            try {
                ZeroFinderOptions strict = opts_;
                strict.max_dilations = 0;
                for (const Rectangle& part : parts) {
                    const auto c = count_zeros(f_, part, strict);
                    total += c.count;
                    if (c.count > 0) children.push_back({part, c.count, c.first_moment});
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ZeroOnContour && e.code() != ErrorCode::QuadratureNotConverged)
                    throw;
                continue;
            }
            if (total == box.count) return children;
        }
        throw Error(ErrorCode::QuadratureNotConverged,
                    "subdivision counts never matched the parent count of " + std::to_string(box.count));
    }

    const EntireFunction& f_;
    ZeroFinderOptions opts_;
    double cluster_diameter_;
};

template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace

SpectrumWindow locate_zeros(const EntireFunction& f, const Rectangle& window, const ZeroFinderOptions& opts) {
    if (!(opts.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    const auto top = count_zeros(f, window, opts);

    SpectrumWindow out;
    out.window = top.contour;
    out.total_count = top.count;

    Locator locator(f, opts);
    std::vector<Box> level{{top.contour, top.count, top.first_moment}};
    std::vector<SpectralPoint> points;
    while (!level.empty()) {
        std::vector<std::vector<SpectralPoint>> found(level.size());
        std::vector<std::vector<Box>> next(level.size());
        parallel_for(level.size(), opts.jobs,
                     [&](std::size_t i) { next[i] = locator.process(level[i], found[i]); });
        level.clear();
        for (std::size_t i = 0; i < found.size(); ++i) {
            points.insert(points.end(), found[i].begin(), found[i].end());
            level.insert(level.end(), next[i].begin(), next[i].end());
        }
    }

    int total = 0;
    for (const auto& p : points) total += p.multiplicity;
    out.points = sorted_by_modulus(std::move(points));
    out.complete = total == out.total_count;
    return out;
}

double coverage_radius(const SpectrumWindow& w, complex center) noexcept {
    if (!w.complete) return 0.0;
    const Rectangle& r = w.window;
    double rad = std::min({center.real() - r.u0, r.u1 - center.real(), center.imag() - r.v0});
    if (!w.zero_free_above) rad = std::min(rad, r.v1 - center.imag());
    return std::max(rad, 0.0);
}

bool covers(const SpectrumWindow& w, const Rectangle& region) noexcept {
    if (!w.complete) return false;
    const Rectangle& r = w.window;
    return region.u0 >= r.u0 && region.u1 <= r.u1 && region.v0 >= r.v0 &&
           (w.zero_free_above || region.v1 <= r.v1);
}

int counting_function(std::span<const SpectrumWindow> windows, double r, complex center) {
    for (const auto& w : windows) {
        if (coverage_radius(w, center) < r) continue;
        int n = 0;
        for (const auto& p : w.points)
            if (std::abs(p.k - center) <= r) n += p.multiplicity;
        return n;
    }
    throw Error(ErrorCode::IncompleteCoverage,
                "no complete window covers the disk of radius " + std::to_string(r));
}

int counting_function(const SpectrumWindow& window, double r, complex center) {
    return counting_function(std::span<const SpectrumWindow>(&window, 1), r, center);
}

} // namespace resonance
