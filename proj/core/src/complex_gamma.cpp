#include "rsbeta/complex_gamma.hpp"

#include <quadmath.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rsbeta {

namespace {

// B_{2k} / (2k (2k-1)) as exact numerator/denominator pairs, k = 1..16.
struct Rat { double num, den; };
constexpr std::array<Rat, 16> kStirling = {{
    {1.0, 12.0},                    // B2/(2*1)
    {-1.0, 360.0},                  // B4/(4*3)
    {1.0, 1260.0},                  // B6/(6*5)
    {-1.0, 1680.0},                 // B8/(8*7)
    {1.0, 1188.0},                  // B10/(10*9)
    {-691.0, 360360.0},             // B12/(12*11)
    {1.0, 156.0},                   // B14/(14*13)
    {-3617.0, 122400.0},            // B16/(16*15)
    {43867.0, 244188.0},            // B18/(18*17)
    {-174611.0, 125400.0},          // B20/(20*19)
    {77683.0, 5796.0},              // B22/(22*21)
    {-236364091.0, 1506960.0},      // B24/(24*23)
    {657931.0, 300.0},              // B26/(26*25)
    {-3392780147.0, 93960.0},       // B28/(28*27)
    {1723168255201.0, 2492028.0},   // B30/(30*29)
    {-7709321041217.0, 505920.0},   // B32/(32*31)
}};

// Minimal complex arithmetic over a real type R with the transcendental
// functions the gamma evaluator needs; instantiated for double and
// __float128.
template <typename R> struct Ops;

template <> struct Ops<double> {
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double sinh(double x) { return std::sinh(x); }
    static double cosh(double x) { return std::cosh(x); }
    static double atan2(double y, double x) { return std::atan2(y, x); }
    static double hypot(double x, double y) { return std::hypot(x, y); }
    static double log1p(double x) { return std::log1p(x); }
    static constexpr double pi() { return 3.14159265358979323846264338327950288; }
    static constexpr double log_2pi_half() { return 0.91893853320467274178032973640561764; }
    static constexpr int stirling_terms = 10;
    static constexpr double stirling_radius = 10.0;
};

template <> struct Ops<__float128> {
    static __float128 exp(__float128 x) { return expq(x); }
    static __float128 log(__float128 x) { return logq(x); }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 cos(__float128 x) { return cosq(x); }
    static __float128 sinh(__float128 x) { return sinhq(x); }
    static __float128 cosh(__float128 x) { return coshq(x); }
    static __float128 atan2(__float128 y, __float128 x) { return atan2q(y, x); }
    static __float128 hypot(__float128 x, __float128 y) { return hypotq(x, y); }
    static __float128 log1p(__float128 x) { return log1pq(x); }
    static __float128 pi() { return M_PIq; }
    static __float128 log_2pi_half() { return 0.5q * logq(2.0q * M_PIq); }
    static constexpr int stirling_terms = 16;
    static constexpr double stirling_radius = 30.0;
};

template <typename R> struct Cx {
    R re{}, im{};
    friend Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(Cx a) { return {-a.re, -a.im}; }
    friend Cx operator*(Cx a, Cx b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(R s, Cx a) { return {s * a.re, s * a.im}; }
    friend Cx operator/(Cx a, Cx b) {
        R d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cx conj() const { return {re, -im}; }
};

template <typename R> R cabs(Cx<R> z) { return Ops<R>::hypot(z.re, z.im); }
template <typename R> Cx<R> cexp(Cx<R> z) {
    R e = Ops<R>::exp(z.re);
    return {e * Ops<R>::cos(z.im), e * Ops<R>::sin(z.im)};
}
template <typename R> Cx<R> clog(Cx<R> z) {
    return {Ops<R>::log(cabs(z)), Ops<R>::atan2(z.im, z.re)};
}

// Stirling series for |z| >= stirling_radius, Re(z) >= 0.5.
template <typename R> Cx<R> stirling(Cx<R> z) {
    Cx<R> lz = clog(z);
    Cx<R> half{R(0.5), R(0)};
    Cx<R> s = (z - half) * lz - z;
    s.re += Ops<R>::log_2pi_half();
    Cx<R> inv = Cx<R>{R(1), R(0)} / z;
    Cx<R> inv2 = inv * inv;
    Cx<R> zp = inv;
    for (int k = 0; k < Ops<R>::stirling_terms; ++k) {
        R c = R(kStirling[k].num) / R(kStirling[k].den);
        s = s + c * zp;
        zp = zp * inv2;
    }
    return s;
}

// log Gamma on Re(z) >= 0.5: recur up to the Stirling radius.
template <typename R> Cx<R> log_gamma_right(Cx<R> z) {
    Cx<R> shift{R(0), R(0)};
    while (cabs(z) < R(Ops<R>::stirling_radius)) {
        shift = shift + clog(z);
        z.re += R(1);
    }
    return stirling(z) - shift;
}

// log sin(pi z) on Im(z) >= 0 with the branch that makes the reflection
// formula produce the principal log Gamma:
//   L(z) = -log 2 + i pi/2 - i pi z + Log(1 - e^{2 pi i z}).
template <typename R> Cx<R> log_sin_pi_upper(Cx<R> z) {
    R pi = Ops<R>::pi();
    Cx<R> e = cexp(Cx<R>{-R(2) * pi * z.im, R(2) * pi * z.re});
    Cx<R> one_minus{R(1) - e.re, -e.im};
    Cx<R> out = clog(one_minus);
    out.re -= Ops<R>::log(R(2));
    out.im += pi / R(2);
    out.re += pi * z.im;
    out.im -= pi * z.re;
    return out;
}

template <typename R> Cx<R> log_gamma_impl(Cx<R> z) {
    if (z.im < R(0) || (z.im == R(0) && std::signbit(double(z.im))))
        return log_gamma_impl(z.conj()).conj();
    if (z.im == R(0) && z.re <= R(0)) {
        R r = z.re;
        if (r == R(std::llround(double(r))))
            throw pole_error("log_gamma: pole at non-positive integer");
    }
    if (z.re < R(0.5)) {
        Cx<R> refl = log_gamma_right(Cx<R>{R(1) - z.re, -z.im});
        Cx<R> out = -log_sin_pi_upper(z) - refl;
        out.re += Ops<R>::log(Ops<R>::pi());
        return out;
    }
    return log_gamma_right(z);
}

bool near_nonpositive_int(cplx z, double tol = 1e-12) {
    double r = std::round(z.real());
    return r <= 0.25 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

} // namespace

cplx log_gamma(cplx z) {
    Cx<double> w{z.real(), z.imag()};
    Cx<double> r = log_gamma_impl(w);
    return {r.re, r.im};
}

cplx log_complex_gamma(cplx x, std::int64_t n) {
    cplx alpha = (cplx(double(n), 0) + cplx(0, 1) * x) / 2.0;
    cplx beta = cplx(1, 0) + (cplx(double(n), 0) - cplx(0, 1) * x) / 2.0;
    if (near_nonpositive_int(alpha)) {
        if (near_nonpositive_int(beta)) {
            // pole of the numerator cancelled by a zero of the denominator:
            // rewrite through Gamma(x,n) = (-1)^n Gamma(x,-n)
            cplx v = log_complex_gamma(x, -n);
            if (n & 1) v += cplx(0, 3.14159265358979323846264338327950288);
            return v;
        }
        throw pole_error("complex_gamma: uncancelled pole");
    }
    return log_gamma(alpha) - log_gamma(beta);
}

cplx complex_gamma(cplx x, std::int64_t n) {
    return std::exp(log_complex_gamma(x, n));
}

cplx complex_gamma_ab(cplx alpha, cplx alpha_prime) {
    cplx d = alpha - alpha_prime;
    double r = std::round(d.real());
    if (std::abs(d.real() - r) > 1e-9 || std::abs(d.imag()) > 1e-9)
        throw std::domain_error("complex_gamma_ab: alpha - alpha' is not an integer");
    auto arg = GammaArg::from_ab(alpha, alpha_prime);
    return complex_gamma(arg.x, arg.n);
}

cplx pochhammer(cplx a, std::int64_t n) {
    cplx v(1, 0);
    if (n > 0) {
        for (std::int64_t k = 0; k < n; ++k) v *= a + cplx(double(k), 0);
    } else if (n < 0) {
        for (std::int64_t k = 1; k <= -n; ++k) {
            cplx f = a - cplx(double(k), 0);
            if (f == cplx(0, 0))
                throw std::domain_error("pochhammer: zero factor on the negative branch");
            v /= f;
        }
    }
    return v;
}

cplx gamma_pair_estimate(cplx x, cplx y, std::int64_t n, std::int64_t m,
                         std::int64_t N, cplx z) {
    const double pi = 3.14159265358979323846264338327950288;
    cplx mag = std::exp((cplx(0, 1) * (x + y) - 2.0) * std::log(std::abs(z)));
    if (z.imag() == 0.0) {
        // exact sign factors on the real axis
        std::int64_t k = (z.real() > 0) ? (N - m) : (N - n);
        return mag * ((k & 1) ? -1.0 : 1.0);
    }
    // The upper-half expression and the below-axis variant (arg -> arg - pi
    // together with the sign e^{i pi (N-n)}) agree mod 2 pi i, so a single
    // principal-arg formula covers the whole plane.
    double theta = std::arg(z);
    return mag * std::exp(cplx(0, theta * double(n + m) + pi * double(N - m)));
}

cplx gamma_pair_actual(cplx x, cplx y, std::int64_t n, std::int64_t m,
                       std::int64_t N, cplx z) {
    double R = 2.0 * z.imag();
    return complex_gamma(x + R, n + N) * complex_gamma(y - R, m - N);
}

namespace quadprec {

namespace {
std::string fmt(__float128 v) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.36Qe", v);
    return buf;
}
} // namespace

std::pair<std::string, std::string> log_gamma_str(const std::string& re, const std::string& im) {
    Cx<__float128> z{strtoflt128(re.c_str(), nullptr), strtoflt128(im.c_str(), nullptr)};
    Cx<__float128> r = log_gamma_impl(z);
    return {fmt(r.re), fmt(r.im)};
}

std::pair<std::string, std::string> complex_gamma_str(const std::string& x_re,
                                                      const std::string& x_im,
                                                      std::int64_t n) {
    Cx<__float128> x{strtoflt128(x_re.c_str(), nullptr), strtoflt128(x_im.c_str(), nullptr)};
    Cx<__float128> i{0.0q, 1.0q};
    Cx<__float128> nn{__float128(double(n)), 0.0q};
    Cx<__float128> half{0.5q, 0.0q};
    Cx<__float128> alpha = half * (nn + i * x);
    Cx<__float128> beta = Cx<__float128>{1.0q, 0.0q} + half * (nn - i * x);
    Cx<__float128> r = cexp(log_gamma_impl(alpha) - log_gamma_impl(beta));
    return {fmt(r.re), fmt(r.im)};
}

} // namespace quadprec

} // namespace rsbeta
