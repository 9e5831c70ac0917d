#pragma once

#include <complex>

namespace rsbeta {

using cplx = std::complex<double>;

/// Quasiperiods of the hyperbolic (and elliptic) gamma functions.
/// Both real parts must be positive.
struct QuasiPeriods {
    cplx w1{1, 0};
    cplx w2{1, 0};

    cplx Q() const { return w1 + w2; }
    /// b = sqrt(w1/w2), principal branch.
    cplx b() const { return std::sqrt(w1 / w2); }
    void check() const;
};

/// Second-order Bernoulli polynomial
/// B_{2,2}(u; w) = ((u - Q/2)^2 - (w1^2 + w2^2)/12) / (w1 w2).
cplx b22(cplx u, const QuasiPeriods& w);

enum class HypRep { integral, product, automatic };

/// Hyperbolic gamma function gamma^(2)(u; w1, w2).
///
/// The integral representation is the regularized form of the contour
/// integral over R+i0: with B = u - Q/2,
///   log gamma^(2)(u) = 2B/(w1 w2)
///     - int_0^inf [ sinh(Bt)/(2t sinh(w1 t/2) sinh(w2 t/2))
///                   - (2B/(w1 w2)) e^{-t}(1+t)/t^2 ] dt,
/// convergent on the strip 0 < Re(u) < Re(Q); outside the strip the shift
/// equations gamma^(2)(u + w_i) = 2 sin(pi u / w_j) gamma^(2)(u) extend it
/// (at most 8 shifts). These shift relations are validated against the
/// product representation once per process and the evaluator refuses to use
/// them if the validation fails.
///
/// The product representation requires Im(w1/w2) != 0 and is used by
/// `automatic` whenever |q| is usefully below 1.
cplx hyp_gamma(cplx u, const QuasiPeriods& w, HypRep rep = HypRep::automatic);

/// True if the shift-relation validation against the product representation
/// has passed (runs on first use).
bool hyp_shift_relations_validated();

} // namespace rsbeta
