#include "rsbeta/limit_scan.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "rsbeta/complex_gamma.hpp"
#include "rsbeta/elliptic.hpp"

namespace rsbeta {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);

std::pair<cplx, cplx> eval_sides(LimitMode mode, const LimitPoint& pt, double d) {
    switch (mode) {
        case LimitMode::ell_to_hyp: {
            EllipticBases bases{std::exp(-2.0 * kPi * d * pt.w.w1),
                                std::exp(-2.0 * kPi * d * pt.w.w2)};
            cplx lhs = ell_gamma(std::exp(-2.0 * kPi * d * pt.u), bases);
            cplx pref = std::exp(-kPi * (2.0 * pt.u - pt.w.Q()) / (12.0 * d * pt.w.w1 * pt.w.w2));
            cplx rhs = pref * hyp_gamma(pt.u, pt.w, HypRep::automatic);
            return {lhs, rhs};
        }
        case LimitMode::hyp_to_complex: {
            // b = sqrt(w1/w2) = i + delta with w1 w2 = 1
            QuasiPeriods w{cplx(d, 1.0), 1.0 / cplx(d, 1.0)};
            cplx u = kI * (double(pt.n) + pt.x * d);
            cplx lhs = hyp_gamma(u, w, HypRep::product);
            cplx rhs = std::exp(kI * kPi / 2.0 * double(pt.n) * double(pt.n)) *
                       std::exp((kI * pt.x - 1.0) * std::log(4.0 * kPi * d)) *
                       complex_gamma(pt.x, pt.n);
            return {lhs, rhs};
        }
        case LimitMode::hyp_to_rational: {
            // b = sqrt(w1/w2) = 1 + i delta with w1 w2 = 1
            QuasiPeriods w{cplx(1.0, d), 1.0 / cplx(1.0, d)};
            cplx u = double(pt.n) + pt.x * d;
            cplx lhs = hyp_gamma(u, w, HypRep::product);
            double nm1 = double(pt.n - 1);
            cplx rhs = std::exp(-kI * kPi / 2.0 * nm1 * nm1) *
                       std::pow(cplx(4.0 * kPi * d, 0), pt.n - 1) *
                       pochhammer(1.0 - (double(pt.n) + kI * pt.x) / 2.0, pt.n - 1);
            return {lhs, rhs};
        }
    }
    throw std::logic_error("limit_scan: bad mode");
}

cplx neville_to_zero(const std::vector<double>& xs, std::vector<cplx> ys) {
    const size_t n = xs.size();
    for (size_t k = 1; k < n; ++k)
        for (size_t i = 0; i + k < n; ++i)
            ys[i] = ((0.0 - xs[i + k]) * ys[i] - (0.0 - xs[i]) * ys[i + 1]) / (xs[i] - xs[i + k]);
    return ys[0];
}

} // namespace

std::vector<double> default_limit_grid(int depth) {
    std::vector<double> g;
    for (int k = 0; k < depth; ++k) g.push_back(0.08 * std::pow(2.0, -k));
    return g;
}

LimitScanResult limit_scan(LimitMode mode, const LimitPoint& point,
                           const std::vector<double>& grid) {
    LimitScanResult out;
    out.mode = mode;

    // parallel over grid points, deterministic ordered collection
    std::vector<std::future<std::pair<cplx, cplx>>> futs;
    futs.reserve(grid.size());
    for (double d : grid)
        futs.push_back(std::async(std::launch::async,
                                  [&, d] { return eval_sides(mode, point, d); }));
    for (size_t i = 0; i < grid.size(); ++i) {
        auto [lhs, rhs] = futs[i].get();
        LimitRow row;
        row.delta = grid[i];
        row.lhs = lhs;
        row.rhs = rhs;
        row.ratio = lhs / rhs;
        row.abs_ratio_m1 = std::abs(row.ratio - 1.0);
        out.rows.push_back(row);
    }

    const size_t n = out.rows.size();
    if (n >= 3) {
        const auto& r = out.rows;
        out.monotone_last3 = r[n - 1].abs_ratio_m1 < r[n - 2].abs_ratio_m1 &&
                             r[n - 2].abs_ratio_m1 < r[n - 3].abs_ratio_m1;
        // fit order from the last pairs, geometric grid assumed
        double e1 = r[n - 2].abs_ratio_m1, e2 = r[n - 1].abs_ratio_m1;
        double h1 = r[n - 2].delta, h2 = r[n - 1].delta;
        if (e1 > 100 * 1e-16 && e2 > 100 * 1e-16)
            out.fitted_order = std::log(e1 / e2) / std::log(h1 / h2);
        else
            out.fitted_order = std::numeric_limits<double>::quiet_NaN();
    }
    std::vector<double> xs;
    std::vector<cplx> ys;
    for (const auto& row : out.rows) {
        xs.push_back(row.delta);
        ys.push_back(row.ratio);
    }
    out.extrapolated = xs.empty() ? cplx(0, 0) : neville_to_zero(xs, ys);
    return out;
}

std::string limit_scan_csv(const LimitScanResult& r) {
    std::ostringstream os;
    os.precision(16);
    os << "delta,lhs_re,lhs_im,rhs_re,rhs_im,ratio_re,ratio_im,abs_ratio_minus_1\n";
    for (const auto& row : r.rows)
        os << row.delta << ',' << row.lhs.real() << ',' << row.lhs.imag() << ','
           << row.rhs.real() << ',' << row.rhs.imag() << ',' << row.ratio.real() << ','
           << row.ratio.imag() << ',' << row.abs_ratio_m1 << '\n';
    return os.str();
}

std::string limit_scan_json(const LimitScanResult& r) {
    std::ostringstream os;
    os.precision(16);
    const char* names[] = {"ell_to_hyp", "hyp_to_complex", "hyp_to_rational"};
    os << "{\n  \"mode\": \"" << names[int(r.mode)] << "\",\n  \"rows\": [\n";
    for (size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        os << "    {\"delta\": " << row.delta << ", \"lhs\": [" << row.lhs.real() << ", "
           << row.lhs.imag() << "], \"rhs\": [" << row.rhs.real() << ", " << row.rhs.imag()
           << "], \"ratio\": [" << row.ratio.real() << ", " << row.ratio.imag()
           << "], \"abs_ratio_minus_1\": " << row.abs_ratio_m1 << '}'
           << (i + 1 < r.rows.size() ? ",\n" : "\n");
    }
    os << "  ],\n  \"fitted_order\": " << r.fitted_order << ",\n  \"extrapolated\": ["
       << r.extrapolated.real() << ", " << r.extrapolated.imag() << "],\n  \"monotone_last3\": "
       << (r.monotone_last3 ? "true" : "false") << "\n}\n";
    return os.str();
}

} // namespace rsbeta
