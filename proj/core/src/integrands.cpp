#include <cmath>

#include "json.hpp"
#include "rsbeta/identities.hpp"

namespace rsbeta {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const cplx kI(0, 1);

struct PairVec {
    std::vector<cplx> a;
    std::vector<HalfInt> N;
    int size() const { return int(a.size()); }
};

PairVec split(const std::vector<ParamPoint>& v) {
    PairVec p;
    p.a.reserve(v.size());
    p.N.reserve(v.size());
    for (const auto& q : v) {
        p.a.push_back(q.a);
        p.N.push_back(q.N);
    }
    return p;
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline cplx logG(cplx x, HalfInt n) { return log_complex_gamma(x, n.as_int()); }

// ---- family builders -------------------------------------------------------

LatticeIntegrand build_c_type(const IdentityInstance& inst) {
    auto p = split(inst.vec("a"));
    const int n = inst.rank_n;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.decay = decay_exponent(inst);
    out.negation_symmetric = true;
    out.prefactor = 1.0 / (std::pow(std::pow(2.0, 2 * n + 1) * kPi, n) * factorial(n));
    out.eval = [p, n](const HalfInt* m, const double* x) -> cplx {
        double poly = 1.0;
        for (int j = 0; j < n; ++j) {
            double mj = m[j].as_double();
            poly *= x[j] * x[j] + mj * mj;
            for (int k = j + 1; k < n; ++k) {
                double mk = m[k].as_double();
                double sp = x[j] + x[k], sm = x[j] - x[k];
                double mp = mj + mk, mm = mj - mk;
                poly *= (sp * sp + mp * mp) * (sm * sm + mm * mm);
            }
        }
        cplx acc = 0;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < p.size(); ++l)
                acc += logG(p.a[l] + x[j], p.N[l] + m[j]) + logG(p.a[l] - x[j], p.N[l] - m[j]);
        return poly * std::exp(acc);
    };
    return out;
}

LatticeIntegrand build_a_type_free(const IdentityInstance& inst, int phase_coeff) {
    auto pa = split(inst.vec("a"));
    auto pb = split(inst.vec("b"));
    const int n = inst.rank_n;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.decay = decay_exponent(inst);
    out.prefactor = 1.0 / (std::pow(std::pow(2.0, n + 1) * kPi, n) * factorial(n));
    out.eval = [pa, pb, n, phase_coeff](const HalfInt* m, const double* x) -> cplx {
        HalfInt msum{};
        for (int j = 0; j < n; ++j) msum += m[j];
        cplx phase = Phase::pi_times(phase_coeff * msum).value<cplx>();
        double poly = 1.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double dm = (m[j] - m[k]).as_double(), dx = x[j] - x[k];
                poly *= dx * dx + dm * dm;
            }
        cplx acc = 0;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < pa.size(); ++l)
                acc += logG(pa.a[l] + x[j], pa.N[l] + m[j]) + logG(pb.a[l] - x[j], pb.N[l] - m[j]);
        return phase * poly * std::exp(acc);
    };
    return out;
}

LatticeIntegrand build_a_type_constrained(const IdentityInstance& inst) {
    auto pa = split(inst.vec("a"));
    auto pb = split(inst.vec("b"));
    const int n = inst.rank_n;
    const HalfInt W = inst.lattice_offset;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.lattice_offset = W;
    out.decay = decay_exponent(inst);
    out.prefactor = 1.0 / (std::pow(std::pow(2.0, n + 3) * kPi, n) * factorial(n + 1));
    out.eval = [pa, pb, n, W](const HalfInt* m, const double* x) -> cplx {
        // x_{n+1} = -sum x_j, m_{n+1} = W - sum m_j
        double xs[8];
        HalfInt ms[8];
        double xsum = 0;
        HalfInt msum{};
        for (int j = 0; j < n; ++j) {
            xs[j] = x[j];
            ms[j] = m[j];
            xsum += x[j];
            msum += m[j];
        }
        xs[n] = -xsum;
        ms[n] = W - msum;
        double poly = 1.0;
        for (int j = 0; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                double dm = (ms[j] - ms[k]).as_double(), dx = xs[j] - xs[k];
                poly *= dx * dx + dm * dm;
            }
        cplx acc = 0;
        for (int j = 0; j <= n; ++j)
            for (int l = 0; l < pa.size(); ++l)
                acc += logG(pa.a[l] + xs[j], pa.N[l] + ms[j]) +
                       logG(pb.a[l] - xs[j], pb.N[l] - ms[j]);
        return poly * std::exp(acc);
    };
    return out;
}

LatticeIntegrand build_type2_c(const IdentityInstance& inst, bool with_prefactor) {
    auto p = split(inst.params.count("g") ? inst.vec("g") : inst.vec("a"));
    const ParamPoint t = inst.vec("t")[0];
    const int n = inst.rank_n;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.decay = decay_exponent(inst);
    out.negation_symmetric = true;
    out.prefactor = with_prefactor ? 1.0 / (std::pow(8.0 * kPi, n) * factorial(n)) : cplx(1, 0);
    // 1/G(+-u_j +- u_k, +-m_j +- m_k) = (-1)^{2 mu} [cross products]/16
    const double pair_sign = (inst.nu == nu_half && (n * (n - 1) / 2) % 2) ? -1.0 : 1.0;
    out.eval = [p, t, n, pair_sign](const HalfInt* m, const double* x) -> cplx {
        double poly = pair_sign;
        cplx acc = 0;
        for (int j = 0; j < n; ++j) {
            double mj = m[j].as_double();
            poly *= x[j] * x[j] + mj * mj;
            for (int k = j + 1; k < n; ++k) {
                double mk = m[k].as_double();
                double sp = x[j] + x[k], sm = x[j] - x[k];
                double mp = mj + mk, mm = mj - mk;
                poly *= (sp * sp + mp * mp) * (sm * sm + mm * mm) / 16.0;
                acc += logG(t.a + x[j] + x[k], t.N + m[j] + m[k]) +
                       logG(t.a + x[j] - x[k], t.N + m[j] - m[k]) +
                       logG(t.a - x[j] + x[k], t.N - m[j] + m[k]) +
                       logG(t.a - x[j] - x[k], t.N - m[j] - m[k]);
            }
        }
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < p.size(); ++l)
                acc += logG(p.a[l] + x[j], p.N[l] + m[j]) + logG(p.a[l] - x[j], p.N[l] - m[j]);
        return poly * std::exp(acc);
    };
    return out;
}

LatticeIntegrand build_type2_a(const IdentityInstance& inst) {
    auto pa = split(inst.vec("a"));
    auto pb = split(inst.vec("b"));
    const ParamPoint ta = inst.vec("ta")[0], tb = inst.vec("tb")[0];
    const int n = inst.rank_n;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.decay = decay_exponent(inst);
    out.prefactor = 1.0 / (std::pow(std::pow(2.0, n + 3) * kPi, n) * factorial(n + 1));
    out.eval = [pa, pb, ta, tb, n](const HalfInt* m, const double* x) -> cplx {
        double xs[8];
        HalfInt ms[8];
        double xsum = 0;
        HalfInt msum{};
        for (int j = 0; j < n; ++j) {
            xs[j] = x[j];
            ms[j] = m[j];
            xsum += x[j];
            msum += m[j];
        }
        xs[n] = -xsum;
        ms[n] = HalfInt::of_int(0) - msum;
        double poly = 1.0;
        cplx acc = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                double dm = (ms[i] - ms[j]).as_double(), dx = xs[i] - xs[j];
                poly *= dx * dx + dm * dm;
                acc += logG(ta.a + xs[i] + xs[j], ta.N + ms[i] + ms[j]) +
                       logG(tb.a - xs[i] - xs[j], tb.N - ms[i] - ms[j]);
            }
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k < 3; ++k)
                acc += logG(pa.a[k] + xs[j], pa.N[k] + ms[j]) +
                       logG(pb.a[k] - xs[j], pb.N[k] - ms[j]);
        return poly * std::exp(acc);
    };
    return out;
}

LatticeIntegrand build_mb(const IdentityInstance& inst) {
    auto pb = split(inst.vec("b"));
    auto pa = split(inst.vec("a"));
    LatticeIntegrand out;
    out.dim = 1;
    out.nu = nu_zero;
    out.decay = -4.0;
    out.prefactor = 1.0 / (4.0 * kPi);
    out.eval = [pb, pa](const HalfInt* m, const double* y) -> cplx {
        cplx acc = 0;
        for (int j = 0; j < 3; ++j)
            acc += logG(pb.a[j] + y[0], pb.N[j] + m[0]) + logG(pa.a[j] - y[0], m[0] - pa.N[j]);
        return std::exp(acc);
    };
    return out;
}

cplx poch_halfint(cplx base, HalfInt idx) { return pochhammer(base, idx.as_int()); }

LatticeIntegrand build_rational_c(const IdentityInstance& inst) {
    auto p = split(inst.vec("a"));
    const int n = inst.rank_n;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.decay = -6.0;
    out.negation_symmetric = true;
    out.prefactor = std::pow(cplx(0, 1) * std::pow(2.0, 2 * n + 1) * kPi, -n) / factorial(n);
    out.eval = [p, n](const HalfInt* m, const double* x) -> cplx {
        cplx poly = 1.0;
        for (int j = 0; j < n; ++j) {
            double mj = m[j].as_double();
            poly *= x[j] * x[j] - mj * mj;
            for (int k = j + 1; k < n; ++k) {
                double mk = m[k].as_double();
                double sp = x[j] + x[k], sm = x[j] - x[k];
                double mp = mj + mk, mm = mj - mk;
                poly *= (sp * sp - mp * mp) * (sm * sm - mm * mm);
            }
        }
        cplx val = poly;
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < p.size(); ++l) {
                HalfInt np = p.N[l] + m[j], nm = p.N[l] - m[j];
                val *= poch_halfint(1.0 + (p.a[l] + x[j] - np.as_double()) / 2.0,
                                    np - HalfInt::of_int(1));
                val *= poch_halfint(1.0 + (p.a[l] - x[j] - nm.as_double()) / 2.0,
                                    nm - HalfInt::of_int(1));
            }
        return val;
    };
    return out;
}

LatticeIntegrand build_rational_a(const IdentityInstance& inst) {
    auto pa = split(inst.vec("a"));
    auto pb = split(inst.vec("b"));
    const int n = inst.rank_n;
    LatticeIntegrand out;
    out.dim = n;
    out.nu = inst.nu;
    out.decay = -6.0;
    out.prefactor = std::pow(cplx(0, 1) * std::pow(2.0, n + 3) * kPi, -n) / factorial(n + 1);
    out.eval = [pa, pb, n](const HalfInt* m, const double* x) -> cplx {
        double xs[8];
        HalfInt ms[8];
        double xsum = 0;
        HalfInt msum{};
        for (int j = 0; j < n; ++j) {
            xs[j] = x[j];
            ms[j] = m[j];
            xsum += x[j];
            msum += m[j];
        }
        xs[n] = -xsum;
        ms[n] = HalfInt::of_int(0) - msum;
        cplx val = 1.0;
        for (int j = 0; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                double dm = (ms[j] - ms[k]).as_double(), dx = xs[j] - xs[k];
                val *= dx * dx - dm * dm;
            }
        for (int j = 0; j <= n; ++j)
            for (int l = 0; l < pa.size(); ++l) {
                HalfInt np = pa.N[l] + ms[j], nm = pb.N[l] - ms[j];
                val *= poch_halfint(1.0 + (pa.a[l] + xs[j] - np.as_double()) / 2.0,
                                    np - HalfInt::of_int(1));
                val *= poch_halfint(1.0 + (pb.a[l] - xs[j] - nm.as_double()) / 2.0,
                                    nm - HalfInt::of_int(1));
            }
        return val;
    };
    return out;
}

} // namespace

LatticeIntegrand build_lhs(const IdentityInstance& inst) {
    auto violations = validate(inst);
    bool rational = inst.id == IdentityId::RAT_CN || inst.id == IdentityId::RAT_AN;
    if (!violations.empty() && !rational)
        throw std::invalid_argument("build_lhs: invalid instance: " + violations.front());

    switch (inst.id) {
        case IdentityId::STAR_TRIANGLE_MB: return build_mb(inst);
        case IdentityId::CN_BETA:
        case IdentityId::CN_AW:
        case IdentityId::CN_TRAFO:
        case IdentityId::CN_TRAFO_DEGEN: return build_c_type(inst);
        case IdentityId::AN_BETA:
        case IdentityId::AN_TRAFO: return build_a_type_constrained(inst);
        case IdentityId::AN_DEGEN_FULL: return build_a_type_free(inst, inst.rank_n + 2);
        case IdentityId::AN_DEGEN_KONO: return build_a_type_free(inst, inst.rank_n + 1);
        case IdentityId::AN_TRAFO_DEGEN:
            return build_a_type_free(inst, inst.rank_n + inst.rank_m + 1);
        case IdentityId::SELBERG_MB: return build_type2_c(inst, true);
        case IdentityId::CN_TYPE2_TRAFO: return build_type2_c(inst, false);
        case IdentityId::AN_TYPE2: return build_type2_a(inst);
        case IdentityId::RAT_CN: return build_rational_c(inst);
        case IdentityId::RAT_AN: return build_rational_a(inst);
    }
    throw std::logic_error("build_lhs: unknown identity");
}

// ---------------------------------------------------------------------------
// right-hand sides
// ---------------------------------------------------------------------------

namespace {

cplx G(cplx x, HalfInt n) { return complex_gamma(x, n.as_int()); }

cplx sum_a(const std::vector<ParamPoint>& v) {
    cplx s = 0;
    for (const auto& p : v) s += p.a;
    return s;
}

HalfInt sum_N(const std::vector<ParamPoint>& v) {
    HalfInt s{};
    for (const auto& p : v) s += p.N;
    return s;
}

RhsSpec rhs_mb(const IdentityInstance& inst) {
    const auto& b = inst.vec("b");
    const auto& a = inst.vec("a");
    cplx v = 1;
    for (const auto& pb : b)
        for (const auto& pa : a) v *= G(pb.a + pa.a, pb.N + pa.N);
    return {false, v, std::nullopt};
}

RhsSpec rhs_cn_beta(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const int n = inst.rank_n;
    cplx v = Phase::pi_times((n - 1) * (n - 2) * inst.nu).value<cplx>();
    for (size_t l = 0; l < a.size(); ++l)
        for (size_t s = l + 1; s < a.size(); ++s) v *= G(a[l].a + a[s].a, a[l].N + a[s].N);
    return {false, v, std::nullopt};
}

RhsSpec rhs_an_beta(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const int n = inst.rank_n;
    cplx A = sum_a(a), B = sum_a(b);
    HalfInt N = sum_N(a), M = sum_N(b);
    // e^{i pi (n-1)(N^2 - (n+2) nu^2)} as an exact eighth root
    std::int64_t N2 = N.twice(), nu2 = inst.nu.twice();
    std::int64_t q = (n - 1) * (N2 * N2 - std::int64_t(n + 2) * nu2 * nu2);
    cplx v = Phase::quarter(q).value<cplx>();
    for (const auto& p : a) v *= G(A - p.a, N - p.N);
    for (const auto& p : b) v *= G(B - p.a, M - p.N);
    for (const auto& pa : a)
        for (const auto& pb : b) v *= G(pa.a + pb.a, pa.N + pb.N);
    return {false, v, std::nullopt};
}

RhsSpec rhs_selberg(const IdentityInstance& inst) {
    const auto& g = inst.vec("g");
    const ParamPoint t = inst.vec("t")[0];
    const int n = inst.rank_n;
    std::int64_t r = t.N.as_int();
    cplx v = Phase::minus_one_pow(r * (std::int64_t(n) * (n - 1) / 2)).value<cplx>();
    for (int j = 1; j <= n; ++j) {
        v *= G(double(j) * t.a, j * t.N) / G(t.a, t.N);
        for (size_t l = 0; l < g.size(); ++l)
            for (size_t s = l + 1; s < g.size(); ++s)
                v *= G(double(j - 1) * t.a + g[l].a + g[s].a, (j - 1) * t.N + g[l].N + g[s].N);
    }
    return {false, v, std::nullopt};
}

RhsSpec rhs_an_type2(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const ParamPoint ta = inst.vec("ta")[0], tb = inst.vec("tb")[0];
    const int n = inst.rank_n;
    const std::int64_t N = ta.N.as_int(), M = tb.N.as_int();
    cplx v;
    if (n % 2 == 1) {
        // e^{(i pi/2) phi_odd}, phi_odd = (n/4)(n^2-1)(N+M); n odd makes
        // n(n^2-1)/4 an even integer
        std::int64_t phi = (std::int64_t(n) * (std::int64_t(n) * n - 1) / 4) * (N + M);
        v = Phase::quarter(2 * phi).value<cplx>();
        v *= G(double((n + 1) / 2) * ta.a, ((n + 1) / 2) * ta.N) *
             G(double((n + 1) / 2) * tb.a, ((n + 1) / 2) * tb.N);
        for (int i = 0; i < 3; ++i)
            for (int k = i + 1; k < 3; ++k) {
                v *= G(double((n - 1) / 2) * ta.a + a[i].a + a[k].a,
                       ((n - 1) / 2) * ta.N + a[i].N + a[k].N);
                v *= G(double((n - 1) / 2) * tb.a + b[i].a + b[k].a,
                       ((n - 1) / 2) * tb.N + b[i].N + b[k].N);
            }
        for (int j = 1; j <= (n + 1) / 2; ++j)
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    v *= G(double(j - 1) * (ta.a + tb.a) + a[i].a + b[k].a,
                           (j - 1) * (ta.N + tb.N) + a[i].N + b[k].N);
        for (int j = 1; j <= (n - 1) / 2; ++j) {
            for (int i = 0; i < 3; ++i)
                for (int k = i + 1; k < 3; ++k) {
                    v *= G(double(j - 1) * ta.a + double(j) * tb.a + a[i].a + a[k].a,
                           (j - 1) * ta.N + j * tb.N + a[i].N + a[k].N);
                    v *= G(double(j) * ta.a + double(j - 1) * tb.a + b[i].a + b[k].a,
                           j * ta.N + (j - 1) * tb.N + b[i].N + b[k].N);
                }
            v *= G(double(j) * (ta.a + tb.a), j * (ta.N + tb.N));
        }
    } else {
        // phi_even of the even closed form (nu = 0 forced, all N_i integers)
        std::int64_t sNk = 0, sMk = 0, sq = 0;
        for (int i = 0; i < 3; ++i) {
            sNk += a[i].N.as_int();
            sMk += b[i].N.as_int();
            sq += a[i].N.as_int() * a[i].N.as_int() + b[i].N.as_int() * b[i].N.as_int();
        }
        std::int64_t c = -std::int64_t(n) * n / 4 + n / 2 + 1;
        std::int64_t phi = (N * N + M * M) * c - 2 * N * sNk - 2 * M * sMk + sNk * sNk +
                           sMk * sMk + std::int64_t(n) * sq;
        v = Phase::quarter(2 * phi).value<cplx>();
        for (int i = 0; i < 3; ++i) {
            v *= G(double(n / 2) * ta.a + a[i].a, (n / 2) * ta.N + a[i].N);
            v *= G(double(n / 2) * tb.a + b[i].a, (n / 2) * tb.N + b[i].N);
        }
        cplx sa = sum_a(a), sb = sum_a(b);
        v *= G(double(n / 2 - 1) * ta.a + sa, (n / 2 - 1) * ta.N + sum_N(a));
        v *= G(double(n / 2 - 1) * tb.a + sb, (n / 2 - 1) * tb.N + sum_N(b));
        for (int j = 1; j <= n / 2; ++j) {
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    v *= G(double(j - 1) * (ta.a + tb.a) + a[i].a + b[k].a,
                           (j - 1) * (ta.N + tb.N) + a[i].N + b[k].N);
            for (int i = 0; i < 3; ++i)
                for (int k = i + 1; k < 3; ++k) {
                    v *= G(double(j - 1) * ta.a + double(j) * tb.a + a[i].a + a[k].a,
                           (j - 1) * ta.N + j * tb.N + a[i].N + a[k].N);
                    v *= G(double(j) * ta.a + double(j - 1) * tb.a + b[i].a + b[k].a,
                           j * ta.N + (j - 1) * tb.N + b[i].N + b[k].N);
                }
            v *= G(double(j) * (ta.a + tb.a), j * (ta.N + tb.N));
        }
    }
    return {false, v, std::nullopt};
}

RhsSpec rhs_an_degen_full(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const int n = inst.rank_n;
    HalfInt M = sum_N(b);
    cplx v = Phase::pi_times(M).value<cplx>() *
             Phase::pi_times(((n + 1) * n - 2) * inst.nu).value<cplx>();
    for (const auto& pa : a)
        for (const auto& pb : b) v *= G(pa.a + pb.a, pa.N + pb.N);
    return {false, v, std::nullopt};
}

RhsSpec rhs_an_degen_kono(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const int n = inst.rank_n;
    cplx v = Phase::pi_times(n * (n + 1) * inst.nu).value<cplx>();
    for (const auto& pa : a)
        for (const auto& pb : b) v *= G(pa.a + pb.a, pa.N + pb.N);
    v /= G(sum_a(a) + sum_a(b), sum_N(a) + sum_N(b));
    return {false, v, std::nullopt};
}

RhsSpec rhs_cn_aw(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const int n = inst.rank_n;
    cplx v = Phase::pi_times(-(n * (n + 1)) * inst.nu).value<cplx>();
    for (size_t l = 0; l < a.size(); ++l)
        for (size_t s = l + 1; s < a.size(); ++s) v *= G(a[l].a + a[s].a, a[l].N + a[s].N);
    v /= G(sum_a(a), sum_N(a));
    return {false, v, std::nullopt};
}

RhsSpec rhs_cn_trafo(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const int n = inst.rank_n, m = inst.rank_m;
    cplx pref = Phase::pi_times((n + m - 1) * (n + m - 2) * inst.nu).value<cplx>();
    for (size_t l = 0; l < a.size(); ++l)
        for (size_t s = l + 1; s < a.size(); ++s) pref *= G(a[l].a + a[s].a, a[l].N + a[s].N);
    IdentityInstance partner;
    partner.id = inst.id;
    partner.rank_n = m;
    partner.rank_m = n;
    partner.nu = inst.nu;
    partner.seed = inst.seed;
    auto& pv = partner.params["a"];
    for (const auto& p : a) pv.push_back({-kI - p.a, HalfInt::of_int(0) - p.N});
    return {true, pref, partner};
}

RhsSpec rhs_cn_type2_trafo(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const ParamPoint t = inst.vec("t")[0];
    const int n = inst.rank_n;
    cplx X = 0.5 * (double(1 - n) * t.a - (a[0].a + a[1].a + a[2].a + a[3].a));
    HalfInt K4 = (1 - n) * t.N - (a[0].N + a[1].N + a[2].N + a[3].N); // 2K
    // prefactor e^{i pi n sum_{j<=4} N_j} prod_{l<n} [pairs within each half]
    HalfInt sN4 = a[0].N + a[1].N + a[2].N + a[3].N;
    cplx pref = Phase::pi_times(n * sN4).value<cplx>();
    for (int l = 0; l < n; ++l) {
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                pref *= G(double(l) * t.a + a[j].a + a[k].a, l * t.N + a[j].N + a[k].N);
        for (int j = 4; j < 8; ++j)
            for (int k = j + 1; k < 8; ++k)
                pref *= G(double(l) * t.a + a[j].a + a[k].a, l * t.N + a[j].N + a[k].N);
    }
    IdentityInstance partner;
    partner.id = inst.id;
    partner.rank_n = n;
    partner.rank_m = 0;
    partner.seed = inst.seed;
    HalfInt K = HalfInt::of_twice(K4.twice() / 2); // K = K4/2, possibly half-integer
    partner.nu = (K.is_integer()) ? inst.nu : (inst.nu == nu_zero ? nu_half : nu_zero);
    auto& pv = partner.params["a"];
    for (int j = 0; j < 4; ++j) pv.push_back({a[j].a - kI + X, a[j].N + K});
    for (int j = 4; j < 8; ++j) pv.push_back({a[j].a + kI - X, a[j].N - K});
    partner.params["t"] = {t};
    return {true, pref, partner};
}

RhsSpec rhs_an_trafo(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const int n = inst.rank_n, m = inst.rank_m;
    cplx C = sum_a(a), D = sum_a(b);
    HalfInt W = sum_N(a);
    cplx phase;
    if (inst.nu == nu_zero) {
        phase = Phase::pi_times((n + m + 1) * W).value<cplx>();
    } else {
        // phi(1/2) = (3m - n + 2)(n + m + 2)/4 + W^2, an integer for odd n
        std::int64_t q = std::int64_t(3 * m - n + 2) * (n + m + 2) + W.twice() * W.twice();
        phase = Phase::quarter(q).value<cplx>();
    }
    cplx pref = phase;
    for (const auto& pa : a)
        for (const auto& pb : b) pref *= G(pa.a + pb.a, pa.N + pb.N);
    IdentityInstance partner;
    partner.id = inst.id;
    partner.rank_n = m;
    partner.rank_m = n;
    partner.nu = inst.nu;
    partner.seed = inst.seed;
    partner.lattice_offset = W;
    auto& pva = partner.params["a"];
    auto& pvb = partner.params["b"];
    for (const auto& p : a) pva.push_back({C / double(m + 1) - p.a, HalfInt::of_int(0) - p.N});
    for (const auto& p : b) pvb.push_back({D / double(m + 1) - p.a, HalfInt::of_int(0) - p.N});
    return {true, pref, partner};
}

RhsSpec rhs_cn_trafo_degen(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const int n = inst.rank_n, m = inst.rank_m;
    cplx pref = Phase::pi_times((n + m) * (n + m + 1) * inst.nu).value<cplx>();
    for (size_t l = 0; l < a.size(); ++l)
        for (size_t s = l + 1; s < a.size(); ++s) pref *= G(a[l].a + a[s].a, a[l].N + a[s].N);
    pref /= G(sum_a(a) + cplx(0, 2.0 * m), sum_N(a));
    IdentityInstance partner;
    partner.id = inst.id;
    partner.rank_n = m;
    partner.rank_m = n;
    partner.nu = inst.nu;
    partner.seed = inst.seed;
    auto& pv = partner.params["a"];
    for (const auto& p : a) pv.push_back({-kI - p.a, HalfInt::of_int(0) - p.N});
    return {true, pref, partner};
}

RhsSpec rhs_an_trafo_degen(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const int n = inst.rank_n, m = inst.rank_m;
    cplx pref = Phase::pi_times((n - m) * (n + m + 1) * inst.nu).value<cplx>() *
                Phase::pi_times(m * (sum_N(a) - sum_N(b))).value<cplx>();
    for (const auto& pa : a)
        for (const auto& pb : b) pref *= G(pa.a + pb.a, pa.N + pb.N);
    pref /= G(sum_a(a) + sum_a(b) + cplx(0, 2.0 * m), sum_N(a) + sum_N(b));
    IdentityInstance partner;
    partner.id = inst.id;
    partner.rank_n = m;
    partner.rank_m = n;
    partner.nu = inst.nu;
    partner.seed = inst.seed;
    auto& pva = partner.params["a"];
    auto& pvb = partner.params["b"];
    // the partner's a-type slots carry (-i - b, -M) and its b-type slots (-i - a, -N)
    for (const auto& p : b) pva.push_back({-kI - p.a, HalfInt::of_int(0) - p.N});
    for (const auto& p : a) pvb.push_back({-kI - p.a, HalfInt::of_int(0) - p.N});
    return {true, pref, partner};
}

RhsSpec rhs_rat_cn(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const int n = inst.rank_n;
    std::int64_t e = (std::int64_t(n) - 1) * (n - 2) * inst.nu.twice() / 2 + n + 1;
    cplx v = Phase::minus_one_pow(e).value<cplx>();
    for (size_t l = 0; l < a.size(); ++l)
        for (size_t s = l + 1; s < a.size(); ++s) {
            HalfInt Nls = a[l].N + a[s].N;
            v *= pochhammer(1.0 + (a[l].a + a[s].a - Nls.as_double()) / 2.0,
                            Nls.as_int() - 1);
        }
    return {false, v, std::nullopt};
}

RhsSpec rhs_rat_an(const IdentityInstance& inst) {
    const auto& a = inst.vec("a");
    const auto& b = inst.vec("b");
    const int n = inst.rank_n;
    cplx A = sum_a(a), B = sum_a(b);
    HalfInt N = sum_N(a), M = sum_N(b);
    // e^{-i pi (n-1)(n/2 + N^2 - (n+2) nu^2)}
    std::int64_t N2 = N.twice(), nu2 = inst.nu.twice();
    std::int64_t q = -(n - 1) * (2 * n + N2 * N2 - std::int64_t(n + 2) * nu2 * nu2);
    cplx v = Phase::quarter(q).value<cplx>();
    auto pochG = [](cplx x, HalfInt k) {
        return pochhammer(1.0 + (x - k.as_double()) / 2.0, k.as_int() - 1);
    };
    for (const auto& p : a) v *= pochG(A - p.a, N - p.N);
    for (const auto& p : b) v *= pochG(B - p.a, M - p.N);
    for (const auto& pa : a)
        for (const auto& pb : b) v *= pochG(pa.a + pb.a, pa.N + pb.N);
    return {false, v, std::nullopt};
}

} // namespace

RhsSpec build_rhs(const IdentityInstance& inst) {
    auto violations = validate(inst);
    if (!violations.empty())
        throw std::invalid_argument("build_rhs: invalid instance: " + violations.front());
    switch (inst.id) {
        case IdentityId::STAR_TRIANGLE_MB: return rhs_mb(inst);
        case IdentityId::CN_BETA: return rhs_cn_beta(inst);
        case IdentityId::AN_BETA: return rhs_an_beta(inst);
        case IdentityId::SELBERG_MB: return rhs_selberg(inst);
        case IdentityId::AN_TYPE2: return rhs_an_type2(inst);
        case IdentityId::AN_DEGEN_FULL: return rhs_an_degen_full(inst);
        case IdentityId::AN_DEGEN_KONO: return rhs_an_degen_kono(inst);
        case IdentityId::CN_AW: return rhs_cn_aw(inst);
        case IdentityId::CN_TRAFO: return rhs_cn_trafo(inst);
        case IdentityId::CN_TYPE2_TRAFO: return rhs_cn_type2_trafo(inst);
        case IdentityId::AN_TRAFO: return rhs_an_trafo(inst);
        case IdentityId::CN_TRAFO_DEGEN: return rhs_cn_trafo_degen(inst);
        case IdentityId::AN_TRAFO_DEGEN: return rhs_an_trafo_degen(inst);
        case IdentityId::RAT_CN: return rhs_rat_cn(inst);
        case IdentityId::RAT_AN: return rhs_rat_an(inst);
    }
    throw std::logic_error("build_rhs: unknown identity");
}

// ---------------------------------------------------------------------------
// JSON (de)serialization
// ---------------------------------------------------------------------------

std::string instance_to_json(const IdentityInstance& inst) {
    nlohmann::json j;
    j["identity"] = descriptor(inst.id).name;
    j["rank_n"] = inst.rank_n;
    if (descriptor(inst.id).uses_rank_m) j["rank_m"] = inst.rank_m;
    j["nu"] = inst.nu.str();
    j["seed"] = inst.seed;
    if (inst.lattice_offset != nu_zero) j["lattice_offset"] = inst.lattice_offset.str();
    nlohmann::json params;
    for (const auto& [name, vec] : inst.params) {
        nlohmann::json a = nlohmann::json::array(), N = nlohmann::json::array();
        for (const auto& p : vec) {
            a.push_back({p.a.real(), p.a.imag()});
            N.push_back(p.N.str());
        }
        params[name] = {{"a", a}, {"N", N}};
    }
    j["params"] = params;
    return j.dump(2);
}

IdentityInstance instance_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    IdentityInstance inst;
    inst.id = identity_from_name(j.at("identity").get<std::string>());
    inst.rank_n = j.value("rank_n", 1);
    inst.rank_m = j.value("rank_m", 0);
    inst.seed = j.value("seed", std::uint64_t(0));
    auto parse_halfint = [](const nlohmann::json& v) {
        if (v.is_number_integer()) return HalfInt::of_int(v.get<std::int64_t>());
        return HalfInt::parse(v.get<std::string>());
    };
    if (j.contains("nu")) inst.nu = parse_halfint(j["nu"]);
    if (j.contains("lattice_offset")) inst.lattice_offset = parse_halfint(j["lattice_offset"]);
    for (auto& [name, pv] : j.at("params").items()) {
        std::vector<ParamPoint> vec;
        const auto& a = pv.at("a");
        const auto& N = pv.at("N");
        if (a.size() != N.size())
            throw std::invalid_argument("params '" + name + "': a and N length mismatch");
        for (size_t i = 0; i < a.size(); ++i)
            vec.push_back({cplx(a[i][0].get<double>(), a[i][1].get<double>()),
                           parse_halfint(N[i])});
        inst.params[name] = std::move(vec);
    }
    return inst;
}

} // namespace rsbeta
