#include "resonance/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chebyshev.hpp"
#include "resonance/error.hpp"
#include "resonance/jost.hpp"

namespace resonance {

namespace {

constexpr complex I{0.0, 1.0};

// The kernel separates:
//   G(t - x, k) = e^{-ikx} [C(k^2 x^2) U(t) - x S(k^2 x^2) V(t)],
//   U(t) = e^{ikt} t S(k^2 t^2),  V(t) = e^{ikt} C(k^2 t^2),
// with C = cos sqrt, S = sin sqrt / sqrt. Each level is then two
// right-cumulative integrals, evaluated spectrally on Chebyshev nodes.
class NeumannSolver {
public:
    NeumannSolver(const PiecewisePotential& p, complex k, double tol) : k_(k), tol_(tol) {
        if (!p.is_canonical())
            throw Error(ErrorCode::InvalidArgument, "line potential must be canonicalized first");
        const auto c = constants(p);
        gamma_ = p.support_end();
        h_ = c.Q / std::max(1.0, std::abs(k));
        vminus_ = v_minus(k);

        const auto xs = p.breakpoints();
        const auto qs = p.values();
        for (std::size_t j = 0; j < qs.size(); ++j) {
            if (qs[j] == 0.0) continue;
            Piece piece;
            piece.a = xs[j];
            piece.b = xs[j + 1];
            piece.q = qs[j];
            const double len = piece.b - piece.a;
            const double omega = 3.0 * std::abs(k) + std::sqrt(std::abs(qs[j])) + 1.0;
            const int size = std::clamp(static_cast<int>(std::ceil(0.75 * omega * len)) + 32, 24, 768);
            piece.rule = &detail::chebyshev_rule(size);
            piece.t.resize(size);
            piece.u.resize(size);
            piece.v.resize(size);
            piece.cx.resize(size);
            piece.sx.resize(size);
            piece.phase.resize(size);
            for (int i = 0; i < size; ++i) {
                const double t = piece.a + len * piece.rule->nodes[i];
                piece.t[i] = t;
                const auto ker = entire_kernels(k * k * t * t);
                const complex e = std::exp(I * k * t);
                piece.u[i] = e * t * ker.sinc_sqrt;
                piece.v[i] = e * ker.cos_sqrt;
                piece.cx[i] = ker.cos_sqrt;
                piece.sx[i] = t * ker.sinc_sqrt;
                piece.phase[i] = std::exp(-I * k * t);
            }
            piece.y_prev.assign(size, complex{1.0});
            piece.y_sum.assign(size, complex{});
            pieces_.push_back(std::move(piece));
        }
        run();
    }

    int levels() const noexcept { return static_cast<int>(tails_.size()); }
    double h() const noexcept { return h_; }
    double vminus() const noexcept { return vminus_; }

    double truncation_bound(double x) const noexcept {
        return std::exp(2.0 * (gamma_ - x) * vminus_) * tail_factor(levels());
    }

    /// y_n(x) for 1 <= n <= levels().
    complex term(int n, double x) const {
        complex a{}, b{};
        for (std::size_t j = 0; j < pieces_.size(); ++j) {
            const Piece& piece = pieces_[j];
            if (x >= piece.b) continue;
            const auto& acc = piece.levels[static_cast<std::size_t>(n - 1)];
            if (x <= piece.a) {
                a = acc.a.front();
                b = acc.b.front();
            } else {
                const double t = (x - piece.a) / (piece.b - piece.a);
                a = detail::barycentric(*piece.rule, acc.a, t);
                b = detail::barycentric(*piece.rule, acc.b, t);
            }
            break;
        }
        const auto ker = entire_kernels(k_ * k_ * x * x);
        return std::exp(-I * k_ * x) * (ker.cos_sqrt * a - x * ker.sinc_sqrt * b);
    }

    /// -sum_n int q y_n.
    complex w_star() const {
        complex total{};
        for (const Piece& piece : pieces_) {
            const auto integral = detail::right_cumulative(*piece.rule, piece.b - piece.a, piece.y_sum);
            total -= piece.q * integral.front();
        }
        return total;
    }

private:
    struct LevelData {
        std::vector<complex> a, b;  // cumulative integrals A_n, B_n at the nodes
    };

    struct Piece {
        double a = 0, b = 0, q = 0;
        const detail::ChebyshevRule* rule = nullptr;
        std::vector<double> t;
        std::vector<complex> u, v, cx, sx, phase;
        std::vector<complex> y_prev, y_sum;
        std::vector<LevelData> levels;
    };

    // sum_{m > n} h^m/m!
    double tail_factor(int n) const noexcept {
        double term = 1.0;
        for (int m = 1; m <= n + 1; ++m) term *= h_ / m;
        const double ratio = h_ / (n + 2);
        if (ratio >= 1.0) return std::exp(h_);  // crude but valid
        return term / (1.0 - ratio);
    }

    void run() {
        if (pieces_.empty()) return;
        double term_bound = 1.0;  // h^n / n!
        for (int n = 1; n <= neumann_max_terms; ++n) {
            term_bound *= h_ / n;
            complex tail_a{}, tail_b{};
            for (std::size_t j = pieces_.size(); j-- > 0;) {
                Piece& piece = pieces_[j];
                const int size = piece.rule->size;
                std::vector<complex> fu(size), fv(size);
                for (int i = 0; i < size; ++i) {
                    fu[i] = piece.u[i] * piece.q * piece.y_prev[i];
                    fv[i] = piece.v[i] * piece.q * piece.y_prev[i];
                }
                LevelData lv;
                lv.a = detail::right_cumulative(*piece.rule, piece.b - piece.a, fu);
                lv.b = detail::right_cumulative(*piece.rule, piece.b - piece.a, fv);
                for (int i = 0; i < size; ++i) {
                    lv.a[i] += tail_a;
                    lv.b[i] += tail_b;
                }
                tail_a = lv.a.front();
                tail_b = lv.b.front();
                piece.levels.push_back(std::move(lv));
            }
            for (Piece& piece : pieces_) {
                const auto& lv = piece.levels.back();
                for (int i = 0; i < piece.rule->size; ++i) {
                    const complex yn = piece.phase[i] * (piece.cx[i] * lv.a[i] - piece.sx[i] * lv.b[i]);
                    check_envelope(n, piece.t[i], yn, term_bound);
                    piece.y_prev[i] = yn;
                    piece.y_sum[i] += yn;
                }
            }
            tails_.push_back(term_bound);
            if (std::exp(2.0 * gamma_ * vminus_) * tail_factor(n) < tol_) return;
        }
        throw Error(ErrorCode::SeriesNotConverged,
                    "Neumann series tail above tolerance after " +
                        std::to_string(neumann_max_terms) + " terms (h = " + std::to_string(h_) + ")");
    }

    void check_envelope(int n, double x, complex yn, double term_bound) const {
        const double bound = term_bound * std::exp(2.0 * (gamma_ - x) * vminus_);
        // Roundoff scales with the largest propagated magnitude.
        const double noise = 1e-12 * std::exp(2.0 * gamma_ * std::abs(k_.imag())) *
                             std::max(term_bound, 1e-300);
        if (std::abs(yn) > bound * (1.0 + 1e-8) + noise)
            throw Error(ErrorCode::EnvelopeViolation,
                        "|y_" + std::to_string(n) + "(" + std::to_string(x) + ")| = " +
                            std::to_string(std::abs(yn)) + " exceeds " + std::to_string(bound));
    }

    complex k_;
    double tol_;
    double gamma_ = 0;
    double h_ = 0;
    double vminus_ = 0;
    std::vector<Piece> pieces_;
    std::vector<double> tails_;  // h^n/n! per computed level
};

} // namespace

NeumannSeriesResult neumann_series(const PiecewisePotential& p, double x, complex k, double tol) {
    if (!(x >= 0.0 && x <= std::max(p.support_end(), 0.0)))
        throw Error(ErrorCode::InvalidArgument, "x must lie in [0, gamma]");
    NeumannSolver solver(p, k, tol);
    NeumannSeriesResult out;
    out.h = solver.h();
    out.v_minus = solver.vminus();
    out.terms.push_back(complex{1.0});
    out.value = 1.0;
    for (int n = 1; n <= solver.levels(); ++n) {
        const complex yn = solver.term(n, x);
        out.terms.push_back(yn);
        out.value += yn;
    }
    out.truncation_bound = solver.levels() == 0 ? 0.0 : solver.truncation_bound(x);
    return out;
}

complex w_star_series(const PiecewisePotential& p, complex k, double tol) {
    return NeumannSolver(p, k, tol).w_star();
}

complex neumann_wronskian(const PiecewisePotential& p, complex k, double tol) {
    return 2.0 * I * k - constants(p).q0 + w_star_series(p, k, tol);
}

} // namespace resonance
