#include "resonance/jost.hpp"

#include <cmath>
#include <string>

#include "resonance/error.hpp"

namespace resonance {

namespace {

constexpr complex I{0.0, 1.0};

// Below this |z| the Maclaurin series is used; 14 terms reach 1e-20.
constexpr double series_radius = 0.25;

} // namespace

EntireKernels entire_kernels(complex z) noexcept {
    EntireKernels out;
    if (std::abs(z) < series_radius) {
        // C = sum (-z)^n/(2n)!, S = sum (-z)^n/(2n+1)!, S' = sum n (-1)^n z^(n-1)/(2n+1)!
        complex c{1.0}, s{1.0}, ds{0.0};
        complex power{1.0};  // (-z)^n
        double fact_even = 1.0, fact_odd = 1.0;
        for (int n = 1; n <= 14; ++n) {
            const complex prev = power;
            power *= -z;
            fact_even *= (2.0 * n - 1.0) * (2.0 * n);
            fact_odd *= (2.0 * n) * (2.0 * n + 1.0);
            c += power / fact_even;
            s += power / fact_odd;
            ds -= static_cast<double>(n) * prev / fact_odd;
        }
        out.cos_sqrt = c;
        out.sinc_sqrt = s;
        out.sinc_sqrt_dz = ds;
        return out;
    }
    // cos and sin(x)/x are even in x, so the branch of the root is irrelevant.
    const complex root = std::sqrt(z);
    out.cos_sqrt = std::cos(root);
    out.sinc_sqrt = std::sin(root) / root;
    out.sinc_sqrt_dz = (out.cos_sqrt - out.sinc_sqrt) / (2.0 * z);
    return out;
}

PieceMatrix piece_matrix(double q, double length, complex k) noexcept {
    const complex m2 = k * k - q;
    const double d = length;
    const auto [c, s, ds] = entire_kernels(m2 * d * d);
    PieceMatrix pm;
    pm.m = {c, -d * s, m2 * d * s, c};
    const complex dc = -k * d * d * s;
    const complex dsinc = 2.0 * k * d * d * ds;
    pm.dm = {dc, -d * dsinc, 2.0 * k * d * s + m2 * d * dsinc, dc};
    return pm;
}

namespace {

struct State {
    complex f, fp, df, dfp;

    void apply(const PieceMatrix& pm) noexcept {
        const auto& m = pm.m;
        const auto& dm = pm.dm;
        const complex nf = m[0] * f + m[1] * fp;
        const complex nfp = m[2] * f + m[3] * fp;
        const complex ndf = dm[0] * f + dm[1] * fp + m[0] * df + m[1] * dfp;
        const complex ndfp = dm[2] * f + dm[3] * fp + m[2] * df + m[3] * dfp;
        f = nf;
        fp = nfp;
        df = ndf;
        dfp = ndfp;
    }

    bool overflowed() const noexcept {
        for (const complex& v : {f, fp, df, dfp}) {
            const double a = std::abs(v);
            if (!(a <= overflow_threshold)) return true;
        }
        return false;
    }
};

[[noreturn]] void raise_overflow(complex k) {
    throw Error(ErrorCode::Overflow, "Jost propagation exceeded 1e280 at k = (" +
                                         std::to_string(k.real()) + ", " +
                                         std::to_string(k.imag()) + "); shrink the window");
}

} // namespace

JostEvaluation evaluate(const PiecewisePotential& p, complex k) {
    if (!p.is_canonical())
        throw Error(ErrorCode::InvalidArgument, "line potential must be canonicalized first");

    const double x_end = p.support_end();
    const complex e = std::exp(I * k * x_end);
    State st{e, I * k * e, I * x_end * e, I * e - k * x_end * e};
    if (st.overflowed()) raise_overflow(k);

    const auto xs = p.breakpoints();
    const auto qs = p.values();
    for (std::size_t j = qs.size(); j-- > 0;) {
        st.apply(piece_matrix(qs[j], xs[j + 1] - xs[j], k));
        if (st.overflowed()) raise_overflow(k);
    }
    if (!p.empty() && p.support_begin() > 0.0) {
        st.apply(piece_matrix(0.0, p.support_begin(), k));
        if (st.overflowed()) raise_overflow(k);
    }

    JostEvaluation ev;
    ev.k = k;
    ev.psi0 = st.f;
    ev.dpsi0 = st.fp;
    ev.w = I * k * st.f + st.fp;
    ev.s = I * k * st.f - st.fp;
    ev.dw = I * st.f + I * k * st.df + st.dfp;
    ev.dpsi0_dk = st.df;
    ev.ddpsi0_dk = st.dfp;
    return ev;
}

WStarEnvelopes w_star_envelopes(const PotentialConstants& c, complex k) noexcept {
    const double k1 = std::max(1.0, std::abs(k));
    const double h = c.Q / k1;
    const double growth = 2.0 * c.gamma * v_minus(k);
    return {c.norm_l1 * h * std::exp(h + growth), c.Q * c.Q / k1 * std::exp(h + growth)};
}

complex w_star(const PiecewisePotential& p, complex k) {
    const auto ev = evaluate(p, k);
    const auto c = constants(p);
    const complex ws = ev.w - 2.0 * I * k + c.q0;

    const auto env = w_star_envelopes(c, k);
    // Roundoff in w is relative to the propagated magnitudes, which grow like
    // exp(2 gamma v_-).
    const double noise = 1e-12 * (1.0 + std::abs(k) + c.Q) * std::exp(2.0 * c.gamma * v_minus(k));
    const double a = std::abs(ws);
    if (a > env.norm_form * (1.0 + 1e-9) + noise || a > env.q_form * (1.0 + 1e-9) + noise)
        throw Error(ErrorCode::EnvelopeViolation,
                    "|w_*| = " + std::to_string(a) + " exceeds envelope " +
                        std::to_string(std::min(env.norm_form, env.q_form)));
    return ws;
}

ScatteringMatrix scattering_matrix(const PiecewisePotential& p, double k) {
    if (p.boundary_case() != BoundaryCase::Line)
        throw Error(ErrorCode::InvalidArgument, "scattering matrix is defined for the line case");
    if (k == 0.0 || !std::isfinite(k))
        throw Error(ErrorCode::InvalidArgument, "scattering matrix needs real k != 0");
    const auto plus = evaluate(p, complex{k, 0.0});
    const auto minus = evaluate(p, complex{-k, 0.0});
    const complex transmission = 2.0 * I * k / plus.w;
    const complex r_plus = minus.s / plus.w;
    const complex r_minus = plus.s / plus.w;
    return {{{transmission, r_minus}, {r_plus, transmission}}};
}

EntireFunction jost_function(const PiecewisePotential& p, BoundaryCase c) {
    switch (c) {
    case BoundaryCase::Line: {
        PiecewisePotential q = canonicalize(p.with_case(BoundaryCase::Line));
        return [q = std::move(q)](complex k) {
            const auto ev = evaluate(q, k);
            return FunctionValue{ev.w, ev.dw};
        };
    }
    case BoundaryCase::Dirichlet: {
        PiecewisePotential q = p.with_case(c);
        return [q = std::move(q)](complex k) {
            const auto ev = evaluate(q, k);
            return FunctionValue{ev.psi0, ev.dpsi0_dk};
        };
    }
    case BoundaryCase::Neumann: {
        PiecewisePotential q = p.with_case(c);
        return [q = std::move(q)](complex k) {
            const auto ev = evaluate(q, k);
            return FunctionValue{ev.dpsi0, ev.ddpsi0_dk};
        };
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown boundary case");
}

EntireFunction jost_function(const PiecewisePotential& p) {
    return jost_function(p, p.boundary_case());
}

} // namespace resonance
