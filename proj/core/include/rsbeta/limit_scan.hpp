#pragma once

#include <complex>
#include <string>
#include <vector>

#include "rsbeta/hyp_gamma.hpp"

namespace rsbeta {

enum class LimitMode { ell_to_hyp, hyp_to_complex, hyp_to_rational };

struct LimitRow {
    double delta = 0;
    cplx lhs{}, rhs{};
    cplx ratio{};
    double abs_ratio_m1 = 0;
};

struct LimitScanResult {
    LimitMode mode{};
    std::vector<LimitRow> rows;
    /// Fitted convergence order p of |ratio-1| ~ C delta^p over the last
    /// grid points; NaN when |ratio-1| sits at rounding level.
    double fitted_order = 0;
    /// Richardson/Neville extrapolation of the ratio to delta -> 0.
    cplx extrapolated{};
    bool monotone_last3 = false;
};

/// Point data for the three scan modes. Unused fields are ignored:
///  - ell_to_hyp:     u, w; grid values are the elliptic nome parameter v.
///  - hyp_to_complex: n, x; quasiperiods are derived from b = i + delta.
///  - hyp_to_rational: n, y (stored in x); quasiperiods from b = 1 + i delta.
struct LimitPoint {
    cplx u{};
    QuasiPeriods w{};
    long n = 0;
    cplx x{};
};

/// Default geometric grid 0.08 * 2^{-k}, k = 0..depth-1.
std::vector<double> default_limit_grid(int depth = 5);

LimitScanResult limit_scan(LimitMode mode, const LimitPoint& point,
                           const std::vector<double>& grid);

/// CSV table: delta, lhs_re, lhs_im, rhs_re, rhs_im, ratio_re, ratio_im, abs_ratio_m1
std::string limit_scan_csv(const LimitScanResult& r);
/// JSON document with rows plus the fit summary.
std::string limit_scan_json(const LimitScanResult& r);

} // namespace rsbeta
