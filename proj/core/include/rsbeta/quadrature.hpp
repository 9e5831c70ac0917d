#pragma once

#include <complex>
#include <functional>

namespace rsbeta {

using cplx = std::complex<double>;

/// Tuning knobs for the lattice-sum / quadrature engine.
struct QuadConfig {
    double tol_rel = 1e-6;
    double x_max = 80.0;        ///< per-axis truncation of the contour integrals
    int n_lattice_max = 400;    ///< per-axis bilateral lattice cutoff
    int subdivision_limit = 2000;
    enum class TailMode { power_law_extrapolation, drop };
    TailMode tail_mode = TailMode::power_law_extrapolation;
    int threads = 0;            ///< 0 = hardware concurrency

    void check() const;
};

struct QuadResult {
    cplx value{};
    double err = 0.0;
    long evals = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod integration of f over [-x_max, x_max], evaluated
/// in mirror pairs f(x)+f(-x) so odd integrands cancel exactly. The tail
/// beyond x_max is handled per tail_mode: a complex-exponent power law
/// c x^s is fitted on the outer decade and integrated analytically.
QuadResult integrate_1d(const std::function<cplx(double)>& f, double x_max,
                        double tol,
                        QuadConfig::TailMode tail_mode = QuadConfig::TailMode::power_law_extrapolation,
                        int subdivision_limit = 2000, double abs_floor = 0.0);

/// Nested adaptive integration over [-x_max, x_max]^n, n <= 3, with
/// per-level tolerance budget tol/(2n).
QuadResult integrate_nd(const std::function<cplx(const double*)>& f, int n,
                        const QuadConfig& config, double abs_floor = 0.0);

/// Adaptive integration over a finite interval [a, b] (no tail handling);
/// building block used by the hyperbolic gamma and the plane quadratures.
QuadResult integrate_interval(const std::function<cplx(double)>& f, double a, double b,
                              double tol, int subdivision_limit = 2000);

} // namespace rsbeta
