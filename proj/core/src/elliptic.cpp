#include "rsbeta/elliptic.hpp"

#include <cmath>

namespace rsbeta {

cplx q_pochhammer_inf(cplx t, cplx q) {
    if (std::abs(q) >= 1.0)
        throw std::domain_error("q_pochhammer_inf: |q| must be < 1");
    cplx v(1, 0);
    cplx tq = t;
    int small_steps = 0;
    for (long k = 0; k < 2000000; ++k) {
        v *= (1.0 - tq);
        double inc = std::abs(tq); // |log(1 - tq)| ~ |tq| once small
        tq *= q;
        if (inc < 1e-16) {
            if (++small_steps >= 3) return v;
        } else {
            small_steps = 0;
        }
    }
    throw std::runtime_error("q_pochhammer_inf: product did not converge");
}

cplx ell_gamma(cplx z, const EllipticBases& bases) {
    bases.check();
    const cplx p = bases.p, q = bases.q;
    // log-accumulated double product; rows in p, q-products per row
    cplx logv(0, 0);
    cplx pj = 1.0; // p^j
    int small_rows = 0;
    for (long j = 0; j < 2000000; ++j) {
        cplx den = q_pochhammer_inf(z * pj, q);
        if (std::abs(den) < 1e-280)
            throw pole_error("ell_gamma: argument on the pole lattice p^{-j} q^{-k}");
        cplx num = q_pochhammer_inf(pj * p * q / z, q);
        cplx inc = std::log(num) - std::log(den);
        logv += inc;
        if (p == cplx(0, 0)) break;
        if (std::abs(inc) < 1e-16) {
            if (++small_rows >= 3) break;
        } else {
            small_rows = 0;
        }
        pj *= p;
    }
    return std::exp(logv);
}

} // namespace rsbeta
