#include "rsbeta/hyp_gamma.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "rsbeta/elliptic.hpp"
#include "rsbeta/quadrature.hpp"

namespace rsbeta {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);
} // namespace

void QuasiPeriods::check() const {
    if (!(w1.real() > 0) || !(w2.real() > 0))
        throw std::domain_error("QuasiPeriods: Re(w1) and Re(w2) must be positive");
}

cplx b22(cplx u, const QuasiPeriods& w) {
    cplx d = u - w.Q() / 2.0;
    return (d * d - (w.w1 * w.w1 + w.w2 * w.w2) / 12.0) / (w.w1 * w.w2);
}

namespace {

// ---- integral representation --------------------------------------------

// strip membership with a safety margin, as a fraction of Re(Q)
double strip_position(cplx u, const QuasiPeriods& w) {
    return u.real() / w.Q().real();
}

cplx log_hyp_gamma_strip(cplx u, const QuasiPeriods& w, double tol) {
    const cplx B = u - w.Q() / 2.0;
    const cplx w1 = w.w1, w2 = w.w2;
    const cplx ww = w1 * w2;

    // series of h(t) = pref [P(t) - e^{-t}(1+t)]/t^2 around t=0, where
    // P(t) = sinh(Bt)/(Bt) * prod_i (w_i t/2)/sinh(w_i t/2)
    const cplx B2 = B * B, B4 = B2 * B2, B6 = B4 * B2;
    const cplx u1 = w1 / 2.0, u2 = w2 / 2.0;
    const cplx u1s = u1 * u1, u2s = u2 * u2;
    const cplx p2 = B2 / 6.0 - (u1s + u2s) / 6.0;
    const cplx p4 = B4 / 120.0 + 7.0 * (u1s * u1s + u2s * u2s) / 360.0 + u1s * u2s / 36.0 -
                    B2 * (u1s + u2s) / 36.0;
    const cplx p6 = B6 / 5040.0 - B4 * (u1s + u2s) / 720.0 +
                    7.0 * B2 * (u1s * u1s + u2s * u2s) / 2160.0 + B2 * u1s * u2s / 216.0 -
                    31.0 * (u1s * u1s * u1s + u2s * u2s * u2s) / 15120.0 -
                    7.0 * u1s * u2s * (u1s + u2s) / 2160.0;
    const cplx pref = 2.0 * B / ww;

    double big = std::max({std::abs(B), std::abs(w1), std::abs(w2), 1.0});
    const double t_switch = 0.05 / big;

    auto h = [&](double t) -> cplx {
        if (t < t_switch) {
            return pref * ((p2 + 0.5) +
                           t * (-1.0 / 3.0 +
                                t * ((p4 + 0.125) +
                                     t * (-1.0 / 30.0 +
                                          t * ((p6 + 1.0 / 144.0) + t * (-1.0 / 840.0))))));
        }
        cplx tb = B * t;
        cplx g = std::sinh(tb) / (2.0 * t * std::sinh(w1 * t / 2.0) * std::sinh(w2 * t / 2.0));
        double e = std::exp(-t) * (1.0 + t) / (t * t);
        return g - pref * e;
    };

    // decay rate of the integrand at infinity
    double rate = w.Q().real() / 2.0 - std::abs(B.real());
    if (rate <= 0.02)
        throw std::domain_error("hyp_gamma: argument too close to the strip boundary");
    double T = 42.0 / rate;

    cplx total = 0;
    double a = 0;
    // split into blocks so oscillatory integrands subdivide locally
    double block = std::max(2.0 / std::max(std::abs(B.imag()), 0.5), T / 64.0);
    while (a < T) {
        double b = std::min(a + block, T);
        auto r = integrate_interval([&](double t) { return h(t); }, a, b, tol, 4000);
        total += r.value;
        a = b;
        block *= 1.6;
    }
    return 2.0 * B / ww - total;
}

// ---- product representation ----------------------------------------------

// gamma^(2) via q-products; requires Im(w1/w2) != 0 (swaps so it is > 0).
cplx log_hyp_gamma_product(cplx u, const QuasiPeriods& w) {
    cplx w1 = w.w1, w2 = w.w2;
    if (std::imag(w1 / w2) < 0) std::swap(w1, w2);
    cplx ratio = w1 / w2;
    if (ratio.imag() <= 0)
        throw std::domain_error("hyp_gamma: product representation needs Im(w1/w2) != 0");
    cplx q = std::exp(2.0 * kPi * kI * ratio);
    cplx qt = std::exp(-2.0 * kPi * kI * (w2 / w1));
    QuasiPeriods ww{w1, w2};
    cplx num = q_pochhammer_inf(qt * std::exp(2.0 * kPi * kI * u / w1), qt);
    cplx den = q_pochhammer_inf(std::exp(2.0 * kPi * kI * u / w2), q);
    if (std::abs(den) == 0.0)
        throw pole_error("hyp_gamma: pole of the product representation");
    return -kI * kPi / 2.0 * b22(u, ww) + std::log(num) - std::log(den);
}

double product_q_mag(const QuasiPeriods& w) {
    double im = std::abs(std::imag(w.w1 / w.w2));
    return std::exp(-2.0 * kPi * im);
}

// ---- shift-equation extension --------------------------------------------

std::once_flag g_validate_once;
bool g_shift_ok = false;

void validate_shift_relations() {
    // compare gamma^(2)(u + w2) against 2 sin(pi u/w1) gamma^(2)(u) with both
    // sides from the product representation, then cross-check the integral
    // representation against the product one on the overlap domain
    QuasiPeriods w{cplx(1.0, 0.0), std::polar(1.0, 0.6)};
    bool ok = true;
    for (cplx u : {cplx(0.35, 0.1), cplx(0.6, -0.2)}) {
        cplx lhs = std::exp(log_hyp_gamma_product(u + w.w2, w));
        cplx rhs = 2.0 * std::sin(kPi * u / w.w1) * std::exp(log_hyp_gamma_product(u, w));
        if (std::abs(lhs - rhs) > 1e-9 * std::abs(rhs)) ok = false;
        cplx lhs1 = std::exp(log_hyp_gamma_product(u + w.w1, w));
        cplx rhs1 = 2.0 * std::sin(kPi * u / w.w2) * std::exp(log_hyp_gamma_product(u, w));
        if (std::abs(lhs1 - rhs1) > 1e-9 * std::abs(rhs1)) ok = false;
        cplx vi = std::exp(log_hyp_gamma_strip(u, w, 1e-12));
        cplx vp = std::exp(log_hyp_gamma_product(u, w));
        if (std::abs(vi - vp) > 1e-8 * std::abs(vp)) ok = false;
    }
    g_shift_ok = ok;
}

cplx hyp_gamma_integral_extended(cplx u, const QuasiPeriods& w, double tol) {
    // walk u into the middle of the strip with at most 8 shifts, collecting
    // the 2 sin factors
    const int max_shifts = 8;
    cplx log_factor = 0;
    int shifts = 0;
    double pos = strip_position(u, w);
    while ((pos <= 0.05 || pos >= 0.95) && shifts < max_shifts) {
        if (!hyp_shift_relations_validated())
            throw std::domain_error("hyp_gamma: shift relations failed validation; "
                                    "argument outside the integral-representation strip");
        if (pos <= 0.05) {
            // gamma(u) = gamma(u + w1) / (2 sin(pi u / w2))
            log_factor -= std::log(2.0 * std::sin(kPi * u / w.w2));
            u += w.w1;
        } else {
            // gamma(u) = 2 sin(pi (u - w1) / w2) gamma(u - w1)
            u -= w.w1;
            log_factor += std::log(2.0 * std::sin(kPi * u / w.w2));
        }
        ++shifts;
        pos = strip_position(u, w);
    }
    if (pos <= 0.02 || pos >= 0.98)
        throw std::domain_error("hyp_gamma: argument not reachable within 8 strip shifts");
    return std::exp(log_factor + log_hyp_gamma_strip(u, w, tol));
}

} // namespace

bool hyp_shift_relations_validated() {
    std::call_once(g_validate_once, validate_shift_relations);
    return g_shift_ok;
}

cplx hyp_gamma(cplx u, const QuasiPeriods& w, HypRep rep) {
    w.check();
    switch (rep) {
        case HypRep::product:
            return std::exp(log_hyp_gamma_product(u, w));
        case HypRep::integral:
            return hyp_gamma_integral_extended(u, w, 1e-12);
        case HypRep::automatic: {
            if (std::abs(std::imag(w.w1 / w.w2)) > 1e-12 && product_q_mag(w) < 0.995)
                return std::exp(log_hyp_gamma_product(u, w));
            return hyp_gamma_integral_extended(u, w, 1e-12);
        }
    }
    throw std::logic_error("hyp_gamma: bad representation");
}

} // namespace rsbeta
