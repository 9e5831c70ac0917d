#pragma once

#include <complex>
#include <stdexcept>

#include "rsbeta/complex_gamma.hpp"

namespace rsbeta {

/// Base pair (p, q) of the elliptic gamma function, both inside the unit disc.
struct EllipticBases {
    cplx p{0, 0};
    cplx q{0, 0};
    void check() const {
        if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
            throw std::domain_error("EllipticBases: |p| and |q| must be < 1");
    }
};

/// (t; q)_inf = prod_{k>=0} (1 - t q^k). Truncation stops once the
/// log-increment stays below 1e-16 for three consecutive factors; the
/// discarded tail is below 1e-14 relative. Throws for |q| >= 1.
cplx q_pochhammer_inf(cplx t, cplx q);

/// Elliptic gamma function
///   Gamma(z; p, q) = prod_{j,k>=0} (1 - z^{-1} p^{j+1} q^{k+1}) / (1 - z p^j q^k).
/// Throws pole_error when z hits the pole lattice p^{-j} q^{-k} within the
/// truncation range.
cplx ell_gamma(cplx z, const EllipticBases& bases);

} // namespace rsbeta
