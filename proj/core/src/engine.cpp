#include "rsbeta/engine.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

namespace rsbeta {

namespace {

// all lattice points of one l_inf shell, enumerated deterministically with
// each point immediately followed by its negation
std::vector<std::vector<HalfInt>> shell_points(int dim, HalfInt nu, long s) {
    std::vector<std::vector<HalfInt>> pts;
    const HalfInt smax = HalfInt::of_int(s) + nu;
    if (smax == HalfInt::of_int(0)) {
        pts.push_back(std::vector<HalfInt>(dim, HalfInt::of_int(0)));
        return pts;
    }
    // walk the box [-smax, smax]^dim (unit steps), keep the shell, emit
    // lexicographically-positive points paired with their negations
    std::vector<HalfInt> cur(dim, -smax);
    const HalfInt one = HalfInt::of_int(1);
    auto advance = [&]() -> bool {
        for (int i = dim - 1; i >= 0; --i) {
            cur[i] += one;
            if (cur[i] <= smax) return true;
            cur[i] = -smax;
        }
        return false;
    };
    while (true) {
        HalfInt mx{};
        for (auto& c : cur) mx = std::max(mx, c.abs());
        if (mx == smax) {
            bool canonical = false;
            for (auto& c : cur)
                if (c != HalfInt::of_int(0)) {
                    canonical = c > HalfInt::of_int(0);
                    break;
                }
            if (canonical) {
                pts.push_back(cur);
                std::vector<HalfInt> neg(dim);
                for (int i = 0; i < dim; ++i) neg[i] = HalfInt::of_int(0) - cur[i];
                pts.push_back(std::move(neg));
            }
        }
        if (!advance()) break;
    }
    return pts;
}

struct PointResult {
    cplx value{};
    double err = 0;
    long evals = 0;
    bool pole = false;
    bool converged = true;
};

PointResult integrate_point(const LatticeIntegrand& f, const std::vector<HalfInt>& m,
                            const QuadConfig& cfg, double abs_floor) {
    PointResult out;
    try {
        if (f.dim == 1) {
            auto r = integrate_1d([&](double x) { return f.eval(m.data(), &x); }, cfg.x_max,
                                  cfg.tol_rel / 4.0, cfg.tail_mode, cfg.subdivision_limit,
                                  abs_floor);
            out.value = r.value;
            out.err = r.err;
            out.evals = r.evals;
            out.converged = r.converged;
        } else {
            QuadConfig inner = cfg;
            inner.tol_rel = cfg.tol_rel / 4.0;
            auto r = integrate_nd([&](const double* x) { return f.eval(m.data(), x); }, f.dim,
                                  inner, abs_floor);
            out.value = r.value;
            out.err = r.err;
            out.evals = r.evals;
            out.converged = r.converged;
        }
    } catch (const pole_error&) {
        out.pole = true;
    }
    return out;
}

// ordered compensated (Kahan) accumulator
struct Kahan {
    cplx sum{}, c{};
    void add(cplx v) {
        cplx y = v - c;
        cplx t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// Neville extrapolation of the partial-sum sequence to 1/s -> 0
cplx neville_limit(const std::vector<double>& nodes, std::vector<cplx> vals) {
    const size_t n = nodes.size();
    for (size_t k = 1; k < n; ++k)
        for (size_t i = 0; i + k < n; ++i)
            vals[i] = ((0.0 - nodes[i + k]) * vals[i] - (0.0 - nodes[i]) * vals[i + 1]) /
                      (nodes[i] - nodes[i + k]);
    return vals[0];
}

} // namespace

BilateralResult bilateral_evaluate(const LatticeIntegrand& f, const QuadConfig& config) {
    config.check();
    if (f.decay > -3.0)
        throw std::domain_error(
            "bilateral_evaluate: decay exponent " + std::to_string(f.decay) +
            " > -3: conditionally-convergent regime refused");

    BilateralResult out;
    Kahan acc;
    double err_acc = 0;
    std::vector<cplx> shell_sums;
    std::vector<cplx> partials;     // raw partial sums
    std::vector<double> svalues;    // shell radii
    const int min_shells = 6;
    const int extrap_depth = 5;

    unsigned nthreads = config.threads > 0 ? unsigned(config.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());

    cplx extrap_prev(0, 0);
    bool have_prev = false;
    double scale_floor = 0;

    long s = 0;
    bool converged = false;
    for (; s <= config.n_lattice_max && !converged; ++s) {
        auto pts = shell_points(f.dim, f.nu, s);
        // weighted work list; negation-symmetric integrands evaluate only the
        // canonical representative of each (m, -m) pair at weight 2
        std::vector<std::pair<std::vector<HalfInt>, double>> work;
        for (size_t i = 0; i < pts.size(); ++i) {
            bool is_zero = true;
            for (auto& c : pts[i]) is_zero = is_zero && (c == HalfInt::of_int(0));
            if (f.negation_symmetric && !is_zero) {
                if (i % 2 == 0) work.emplace_back(pts[i], 2.0);
            } else {
                work.emplace_back(pts[i], 1.0);
            }
        }

        double abs_floor =
            scale_floor > 0 ? config.tol_rel * scale_floor / (8.0 * double(work.size())) : 0.0;

        std::vector<PointResult> results(work.size());
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < work.size(); i = next.fetch_add(1))
                results[i] = integrate_point(f, work[i].first, config, abs_floor);
        };
        std::vector<std::thread> pool;
        for (size_t t = 1; t < std::min<size_t>(nthreads, work.size()); ++t)
            pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        Kahan shell;
        for (size_t i = 0; i < work.size(); ++i) {
            shell.add(work[i].second * results[i].value);
            err_acc += work[i].second * results[i].err;
            out.evals += results[i].evals;
            if (results[i].pole) ++out.pole_hits;
            if (!results[i].converged) out.note = "quadrature subdivision limit reached";
        }
        acc.add(shell.sum);
        shell_sums.push_back(shell.sum);
        partials.push_back(acc.sum);
        svalues.push_back(double(s) + f.nu.as_double() + 1.0);
        scale_floor = std::max(scale_floor, std::abs(acc.sum));

        if (long(partials.size()) < min_shells) continue;

        // alternating shells are paired (averaged partial sums) before the
        // 1/s extrapolation of the partial-sum sequence
        bool alternating = false;
        {
            cplx a = shell_sums[shell_sums.size() - 1];
            cplx b = shell_sums[shell_sums.size() - 2];
            alternating = a.real() * b.real() + a.imag() * b.imag() < 0;
        }
        std::vector<cplx> seq = partials;
        if (alternating)
            for (size_t i = seq.size() - 1; i > 0; --i) seq[i] = 0.5 * (seq[i] + seq[i - 1]);

        int depth = std::min<int>(extrap_depth, int(seq.size()));
        std::vector<double> nodes(depth);
        std::vector<cplx> vals(depth);
        for (int i = 0; i < depth; ++i) {
            nodes[i] = 1.0 / svalues[seq.size() - depth + i];
            vals[i] = seq[seq.size() - depth + i];
        }
        cplx extrap = neville_limit(nodes, vals);
        double scale = std::max(std::abs(extrap), 1e-300);

        if (have_prev) {
            double spread = std::abs(extrap - extrap_prev);
            double last_mag = std::abs(shell_sums.back());
            // stop once successive extrapolations agree and the raw shells
            // are themselves small compared to the answer
            if (spread <= config.tol_rel / 8.0 * scale && last_mag <= 0.05 * scale &&
                std::abs(extrap - acc.sum) <= 0.25 * scale) {
                out.value = extrap;
                out.err = err_acc + 3.0 * spread + 1e-3 * std::abs(extrap - acc.sum);
                converged = true;
            }
        }
        extrap_prev = extrap;
        have_prev = true;
    }
    if (!converged) {
        out.value = have_prev ? extrap_prev : acc.sum;
        out.err = err_acc + std::abs(out.value - acc.sum);
        out.converged = false;
        out.note = "truncation not converged within n_lattice_max shells";
    }
    out.shells = long(shell_sums.size());
    if (out.pole_hits > 0) {
        out.converged = false;
        out.note = "uncancelled pole at " + std::to_string(out.pole_hits) +
                   " lattice point(s); instance should be resampled";
    }
    return out;
}

VerificationReport verify(const IdentityInstance& inst, const QuadConfig& config) {
    auto violations = validate(inst);
    if (!violations.empty())
        throw std::invalid_argument("verify: invalid instance: " + violations.front());
    const int budget = inst.rank_n + inst.rank_m;
    if (budget > 3 || inst.rank_n > 3)
        throw std::invalid_argument("verify: rank budget exceeded (n and n+m must be <= 3)");

    VerificationReport rep;
    rep.identity = descriptor(inst.id).name;
    rep.rank_n = inst.rank_n;
    rep.rank_m = inst.rank_m;
    rep.nu = inst.nu.str();
    rep.seed = inst.seed;

    auto t0 = std::chrono::steady_clock::now();
    try {
        auto lhs_f = build_lhs(inst);
        auto lhs = bilateral_evaluate(lhs_f, config);
        rep.lhs = lhs_f.prefactor * lhs.value;
        rep.lhs_err = std::abs(lhs_f.prefactor) * lhs.err;
        rep.shells = lhs.shells;
        rep.evals = lhs.evals;
        if (!lhs.converged) rep.diagnostics = "lhs: " + lhs.note;

        auto rhs = build_rhs(inst);
        double rhs_err = 0;
        if (!rhs.is_transformation) {
            rep.rhs = rhs.value;
        } else {
            auto partner_f = build_lhs(*rhs.partner);
            auto partner = bilateral_evaluate(partner_f, config);
            rep.rhs = rhs.value * partner_f.prefactor * partner.value;
            rhs_err = std::abs(rhs.value * partner_f.prefactor) * partner.err;
            rep.evals += partner.evals;
            rep.shells = std::max(rep.shells, partner.shells);
            if (!partner.converged)
                rep.diagnostics += std::string(rep.diagnostics.empty() ? "" : "; ") +
                                   "partner: " + partner.note;
        }
        rep.rel_err = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.rhs), 1e-300);
        double est = rep.lhs_err + rhs_err;
        rep.lhs_err = est;
        rep.pass = rep.diagnostics.empty() && rep.rel_err <= config.tol_rel &&
                   est <= 3.0 * config.tol_rel * std::abs(rep.rhs);
    } catch (const std::domain_error& e) {
        rep.pass = false;
        rep.diagnostics = e.what();
    } catch (const std::runtime_error& e) {
        rep.pass = false;
        rep.diagnostics = e.what();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace rsbeta
