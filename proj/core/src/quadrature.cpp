#include "rsbeta/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rsbeta {

void QuadConfig::check() const {
    if (tol_rel <= 0) throw std::invalid_argument("QuadConfig: tol_rel must be > 0");
    if (x_max < 10) throw std::invalid_argument("QuadConfig: x_max must be >= 10");
    if (n_lattice_max < 4) throw std::invalid_argument("QuadConfig: n_lattice_max must be >= 4");
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEval {
    cplx integral;
    double err;
};

template <typename F>
PanelEval gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx resk = kWgk[7] * fc;
    cplx resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * kXgk[i];
        cplx fsum = f(c - dx) + f(c + dx);
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    resk *= h;
    resg *= h;
    // |K15 - G7| is a deliberately conservative bound on the K15 error
    return {resk, std::abs(resk - resg)};
}

struct Panel {
    double a, b;
    cplx integral;
    double err;
};

template <typename F>
QuadResult adaptive(const F& f, double a, double b, double tol_abs, int subdivision_limit) {
    QuadResult out;
    std::vector<Panel> heap;
    auto first = gk15(f, a, b);
    out.evals = 15;
    heap.push_back({a, b, first.integral, first.err});
    auto cmp = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);

    double total_err = first.err;
    cplx total = first.integral;
    int splits = 0;
    while (total_err > tol_abs && splits < subdivision_limit) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Panel worst = heap.back();
        heap.pop_back();
        if (worst.b - worst.a < 1e-14 * (b - a)) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cmp);
            break;
        }
        double mid = 0.5 * (worst.a + worst.b);
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        out.evals += 30;
        total += left.integral + right.integral - worst.integral;
        total_err += left.err + right.err - worst.err;
        heap.push_back({worst.a, mid, left.integral, left.err});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({mid, worst.b, right.integral, right.err});
        std::push_heap(heap.begin(), heap.end(), cmp);
        ++splits;
    }
    // re-sum in deterministic interval order for reproducibility
    std::sort(heap.begin(), heap.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    cplx sum = 0;
    double err = 0;
    for (const auto& p : heap) {
        sum += p.integral;
        err += p.err;
    }
    out.value = sum;
    out.err = err;
    out.converged = splits < subdivision_limit;
    return out;
}

// Fit f ~ c x^s (complex exponent) from two samples on one side and return
// the analytic tail integral beyond x_max; err receives a fit-spread bound.
cplx power_tail(const std::function<cplx(double)>& f, double x_max, int side, double& err) {
    bool refused = false;
    auto tail_from = [&](double r1, double r2) -> cplx {
        cplx f1 = f(side * r1), f2 = f(side * r2);
        if (std::abs(f1) < 1e-280 || std::abs(f2) < 1e-280) return 0.0;
        cplx s = std::log(f2 / f1) / std::log(r2 / r1);
        if (!std::isfinite(s.real()) || s.real() > -1.2) {
            refused = true; // not a decaying power law; no trustworthy tail
            return cplx(0, 0);
        }
        // int_{x_max}^inf c x^s dx = -c x_max^{s+1}/(s+1), c = f2 r2^{-s},
        // assembled in log space so steep decays underflow gracefully
        cplx t = std::log(f2) + (s + 1.0) * std::log(x_max / r2) + std::log(cplx(x_max, 0));
        if (t.real() < -700.0) return 0.0;
        return -std::exp(t) / (s + 1.0);
    };
    cplx t1 = tail_from(0.5 * x_max, x_max);
    cplx t2 = tail_from(0.7 * x_max, 0.9 * x_max);
    err = std::abs(t1 - t2) + 0.1 * std::abs(t1);
    if (refused) err += std::abs(f(side * x_max)) * x_max;
    return t1;
}

} // namespace

QuadResult integrate_interval(const std::function<cplx(double)>& f, double a, double b,
                              double tol, int subdivision_limit) {
    // two-stage: get the scale first, then refine against an absolute target
    auto rough = gk15(f, a, b);
    double scale = std::max(std::abs(rough.integral), 1e-300);
    auto r = adaptive(f, a, b, tol * scale, subdivision_limit);
    r.evals += 15;
    return r;
}

QuadResult integrate_1d(const std::function<cplx(double)>& f, double x_max, double tol,
                        QuadConfig::TailMode tail_mode, int subdivision_limit,
                        double abs_floor) {
    // mirror-paired integrand on [0, x_max]; odd parts cancel exactly
    std::function<cplx(double)> g = [&f](double x) { return f(x) + f(-x); };
    auto rough = gk15(g, 0.0, x_max);
    double scale = std::max(std::abs(rough.integral), 1e-300);
    QuadResult r = adaptive(g, 0.0, x_max, std::max(tol * scale, abs_floor), subdivision_limit);
    r.evals += 15;
    if (tail_mode == QuadConfig::TailMode::power_law_extrapolation) {
        // fit the mirror-paired integrand so odd parts drop out of the tail too
        double et = 0;
        cplx t = power_tail(g, x_max, +1, et);
        r.value += t;
        r.err += et;
        r.evals += 8;
    }
    return r;
}

QuadResult integrate_nd(const std::function<cplx(const double*)>& f, int n,
                        const QuadConfig& config, double abs_floor) {
    config.check();
    if (n < 1 || n > 3) throw std::invalid_argument("integrate_nd: n must be in 1..3");
    double level_tol = config.tol_rel / (2.0 * n);
    long evals = 0;
    double inner_err = 0;

    std::function<cplx(double*, int)> level = [&](double* xs, int depth) -> cplx {
        if (depth == n) {
            ++evals;
            return f(xs);
        }
        auto g = [&](double x) {
            xs[depth] = x;
            return level(xs, depth + 1);
        };
        auto r = integrate_1d(g, config.x_max, level_tol, config.tail_mode,
                              config.subdivision_limit, abs_floor / (4.0 * config.x_max));
        if (depth > 0) inner_err = std::max(inner_err, r.err);
        return r.value;
    };

    double xs[3] = {0, 0, 0};
    if (n == 1) {
        auto r = integrate_1d([&](double x) { xs[0] = x; ++evals; return f(xs); },
                              config.x_max, level_tol, config.tail_mode,
                              config.subdivision_limit, abs_floor);
        return r;
    }
    // outer level with error tracking
    auto gouter = [&](double x) {
        xs[0] = x;
        return level(xs, 1);
    };
    auto r = integrate_1d(gouter, config.x_max, level_tol, config.tail_mode,
                          config.subdivision_limit, abs_floor);
    QuadResult out;
    out.value = r.value;
    out.err = r.err + inner_err * 2.0 * config.x_max;
    out.evals = evals;
    out.converged = r.converged;
    return out;
}

} // namespace rsbeta
