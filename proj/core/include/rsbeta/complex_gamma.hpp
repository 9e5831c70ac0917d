#pragma once

#include <complex>
#include <stdexcept>

#include "rsbeta/half_int.hpp"

namespace rsbeta {

using cplx = std::complex<double>;

/// Thrown when a gamma function is evaluated at a pole (or an identity
/// evaluator hits an uncancelled pole at a lattice point).
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// The pair (x, n) indexing the complex gamma function, interconvertible
/// with the exponent pair (alpha | alpha'). alpha - alpha' = n exactly.
struct GammaArg {
    cplx x;
    std::int64_t n = 0;

    cplx alpha() const { return (cplx(double(n), 0) + cplx(0, 1) * x) / 2.0; }
    cplx alpha_prime() const { return (cplx(-double(n), 0) + cplx(0, 1) * x) / 2.0; }

    static GammaArg from_ab(cplx alpha, cplx alpha_prime) {
        double d = (alpha - alpha_prime).real();
        auto n = static_cast<std::int64_t>(std::llround(d));
        // x = -i (alpha + alpha')
        cplx x = cplx(0, -1) * (alpha + alpha_prime);
        return {x, n};
    }
};

/// Principal branch of log Gamma(z): real on the positive axis, analytic on
/// C minus the cut (-inf, 0], with lim Im z -> 0- conventions on the cut.
/// Accurate to >= 12 significant digits for |z| <= 1e3.
cplx log_gamma(cplx z);

/// Gamma(x, n) = Gamma((n+ix)/2) / Gamma(1 + (n-ix)/2), computed in log
/// space. A pole cancelled by a simultaneous zero of 1/Gamma(1+(n-ix)/2) is
/// resolved through the reflection rewrite Gamma(x,n) = (-1)^n Gamma(x,-n);
/// an uncancelled pole throws pole_error.
cplx complex_gamma(cplx x, std::int64_t n);

/// Gamma(alpha | alpha') = Gamma(alpha)/Gamma(1-alpha'). Rejects pairs with
/// non-integer alpha - alpha'.
cplx complex_gamma_ab(cplx alpha, cplx alpha_prime);

/// log of Gamma(x, n) up to an irrelevant multiple of 2 pi i; used by the
/// integrand builders which accumulate many factors before a single exp.
cplx log_complex_gamma(cplx x, std::int64_t n);

/// Pochhammer symbol (a)_n: rising product for n > 0, reciprocal falling
/// product for n < 0, (a)_0 = 1.
cplx pochhammer(cplx a, std::int64_t n);

/// Leading large-|z| estimate of the product
///   f(z) = Gamma(x + R, n + N) Gamma(y - R, m - N),  z = (N + i R)/2,
/// i.e. |z|^{i(x+y)-2} e^{i[arg(z)(n+m) + pi(N-m)]} above the real axis,
/// the arg(z) -> arg(z) - pi variant below it, and exact sign factors
/// (-1)^{N-m} / (-1)^{N-n} on the two halves of the real axis.
cplx gamma_pair_estimate(cplx x, cplx y, std::int64_t n, std::int64_t m,
                         std::int64_t N, cplx z);

/// The product f(z) itself, evaluated through complex_gamma; test companion
/// of gamma_pair_estimate.
cplx gamma_pair_actual(cplx x, cplx y, std::int64_t n, std::int64_t m,
                       std::int64_t N, cplx z);

namespace quadprec {
/// log Gamma in IEEE binary128 (~34 significant digits), exposed through
/// string round-trips so callers need no __float128 in their own interfaces.
/// `re`/`im` parse as decimal reals; the result is formatted to 36 digits.
std::pair<std::string, std::string> log_gamma_str(const std::string& re, const std::string& im);
/// Gamma(x, n) at extended precision, same string convention.
std::pair<std::string, std::string> complex_gamma_str(const std::string& x_re,
                                                      const std::string& x_im,
                                                      std::int64_t n);
} // namespace quadprec

} // namespace rsbeta
