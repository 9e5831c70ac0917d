#include <cmath>
#include <random>
#include <stdexcept>

#include "rsbeta/identities.hpp"

namespace rsbeta {

namespace {

// platform-stable uniform draws on top of the standard engine
struct Draw {
    std::mt19937_64 g;
    explicit Draw(std::uint64_t seed) : g(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * double(g() >> 11) * 0x1.0p-53;
    }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(g() % std::uint64_t(hi - lo + 1));
    }
};

// Draws `count` complex values whose Re parts sum to re_sum and Im parts to
// im_sum (exactly, via a final adjustment of the last entry). Im parts are
// kept inside [-0.8, -0.2] around the target mean.
std::vector<cplx> draw_balanced(Draw& d, int count, double re_sum, double im_sum) {
    double mean = im_sum / count;
    double spread = std::min({std::abs(mean) - 0.2, 0.8 - std::abs(mean), 0.25});
    spread = std::max(spread, 0.01);
    std::vector<cplx> v(count);
    double sr = 0, si = 0;
    for (int i = 0; i < count; ++i) {
        v[i] = cplx(d.uniform(-1, 1), mean + d.uniform(-spread, spread));
        sr += v[i].real();
        si += v[i].imag();
    }
    // shift everyone to the targets, then pin the last entry exactly
    double dr = (re_sum - sr) / count, di = (im_sum - si) / count;
    for (auto& z : v) z += cplx(dr, di);
    cplx total = 0;
    for (int i = 0; i + 1 < count; ++i) total += v[i];
    v[count - 1] = cplx(re_sum, im_sum) - total;
    return v;
}

// `count` discrete values in {-2+nu..2+nu} summing to `total` exactly.
std::vector<HalfInt> draw_discrete(Draw& d, int count, HalfInt nu, HalfInt total,
                                   int attempts = 400) {
    for (int t = 0; t < attempts; ++t) {
        std::vector<HalfInt> v(count);
        HalfInt s{};
        for (int i = 0; i + 1 < count; ++i) {
            v[i] = HalfInt::of_int(d.uniform_int(-2, 2)) + nu;
            s += v[i];
        }
        v[count - 1] = total - s;
        if (v[count - 1].parity() != nu.parity()) continue;
        if (v[count - 1].abs() > HalfInt::of_int(2) + nu) continue;
        return v;
    }
    throw std::runtime_error("sample_params: discrete draw exhausted");
}

std::vector<ParamPoint> zip(const std::vector<cplx>& a, const std::vector<HalfInt>& N) {
    std::vector<ParamPoint> v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[i] = {a[i], N[i]};
    return v;
}

} // namespace

IdentityInstance sample_params(IdentityId id, int rank_n, int rank_m, HalfInt nu,
                               std::uint64_t seed) {
    const auto& desc = descriptor(id);
    const int n = rank_n, m = rank_m;
    if (nu != nu_zero && nu != nu_half)
        throw std::domain_error("sample_params: nu must be 0 or 1/2");
    if ((id == IdentityId::AN_BETA || id == IdentityId::AN_TYPE2 ||
         id == IdentityId::AN_TRAFO || id == IdentityId::RAT_AN) &&
        (n % 2) == 0 && nu != nu_zero)
        throw std::domain_error("sample_params: parity inadmissible for even n");
    if (id == IdentityId::STAR_TRIANGLE_MB && nu != nu_zero)
        throw std::domain_error("sample_params: this identity requires nu = 0");
    if (desc.uses_rank_m && m < 1)
        throw std::domain_error("sample_params: rank_m must be >= 1 for transformations");

    Draw d(seed ^ 0x9e3779b97f4a7c15ULL);
    const HalfInt zero = HalfInt::of_int(0);

    for (int attempt = 0; attempt < 10000; ++attempt) {
        IdentityInstance inst;
        inst.id = id;
        inst.rank_n = n;
        inst.rank_m = desc.uses_rank_m ? m : 0;
        inst.nu = nu;
        inst.seed = seed;
        try {
            switch (id) {
                case IdentityId::STAR_TRIANGLE_MB: {
                    auto av = draw_balanced(d, 6, 0.0, -2.0);
                    auto Nv = draw_discrete(d, 6, nu_zero, zero);
                    inst.params["b"] = zip({av[0], av[1], av[2]}, {Nv[0], Nv[1], Nv[2]});
                    inst.params["a"] = zip({av[3], av[4], av[5]}, {Nv[3], Nv[4], Nv[5]});
                    break;
                }
                case IdentityId::CN_BETA: {
                    int P = 2 * n + 4;
                    inst.params["a"] =
                        zip(draw_balanced(d, P, 0.0, -2.0), draw_discrete(d, P, nu, zero));
                    break;
                }
                case IdentityId::AN_BETA: {
                    int P = n + 2;
                    auto all = draw_balanced(d, 2 * P, 0.0, -2.0);
                    auto Nall = draw_discrete(d, 2 * P, nu, zero);
                    inst.params["a"] = zip({all.begin(), all.begin() + P},
                                           {Nall.begin(), Nall.begin() + P});
                    inst.params["b"] = zip({all.begin() + P, all.end()},
                                           {Nall.begin() + P, Nall.end()});
                    break;
                }
                case IdentityId::SELBERG_MB: {
                    cplx t(d.uniform(-0.5, 0.5), d.uniform(-0.6, -0.25));
                    HalfInt r = HalfInt::of_int(d.uniform_int(-1, 1));
                    auto gv = draw_balanced(d, 6, -double(2 * n - 2) * t.real(),
                                            -2.0 - double(2 * n - 2) * t.imag());
                    auto rv = draw_discrete(d, 6, nu, zero - (2 * n - 2) * r);
                    inst.params["t"] = {{t, r}};
                    inst.params["g"] = zip(gv, rv);
                    break;
                }
                case IdentityId::AN_TYPE2: {
                    cplx ta(d.uniform(-0.5, 0.5), d.uniform(-0.6, -0.25));
                    cplx tb(d.uniform(-0.5, 0.5), d.uniform(-0.6, -0.25));
                    HalfInt NN = HalfInt::of_int(d.uniform_int(-1, 1));
                    HalfInt MM = HalfInt::of_int(d.uniform_int(-1, 1));
                    cplx rem = cplx(0, -2) - double(n - 1) * (ta + tb);
                    auto all = draw_balanced(d, 6, rem.real(), rem.imag());
                    auto Nall = draw_discrete(d, 6, nu, zero - (n - 1) * (NN + MM));
                    inst.params["ta"] = {{ta, NN}};
                    inst.params["tb"] = {{tb, MM}};
                    inst.params["a"] = zip({all[0], all[1], all[2]}, {Nall[0], Nall[1], Nall[2]});
                    inst.params["b"] = zip({all[3], all[4], all[5]}, {Nall[3], Nall[4], Nall[5]});
                    break;
                }
                case IdentityId::AN_DEGEN_FULL: {
                    int P = n + 2;
                    auto all = draw_balanced(d, 2 * P, 0.0, -2.0);
                    auto Nall = draw_discrete(d, 2 * P, nu, zero);
                    inst.params["a"] = zip({all.begin(), all.begin() + P},
                                           {Nall.begin(), Nall.begin() + P});
                    inst.params["b"] = zip({all.begin() + P, all.end()},
                                           {Nall.begin() + P, Nall.end()});
                    break;
                }
                case IdentityId::AN_DEGEN_KONO: {
                    int P = n + 1;
                    double target = std::min(-0.95, -0.22 * 2 * P);
                    auto all = draw_balanced(d, 2 * P, d.uniform(-1, 1), target);
                    std::vector<HalfInt> Na(P), Nb(P);
                    for (int i = 0; i < P; ++i) {
                        Na[i] = HalfInt::of_int(d.uniform_int(-1, 1)) + nu;
                        Nb[i] = HalfInt::of_int(d.uniform_int(-1, 1)) + nu;
                    }
                    inst.params["a"] = zip({all.begin(), all.begin() + P}, Na);
                    inst.params["b"] = zip({all.begin() + P, all.end()}, Nb);
                    break;
                }
                case IdentityId::CN_AW: {
                    int P = 2 * n + 2;
                    double target = std::min(-1.2, -0.25 * P);
                    auto av = draw_balanced(d, P, d.uniform(-1, 1), target);
                    std::vector<HalfInt> Nv(P);
                    for (int i = 0; i < P; ++i) Nv[i] = HalfInt::of_int(d.uniform_int(-1, 1)) + nu;
                    inst.params["a"] = zip(av, Nv);
                    break;
                }
                case IdentityId::CN_TRAFO: {
                    int P = 2 * n + 2 * m + 4;
                    inst.params["a"] = zip(draw_balanced(d, P, 0.0, -2.0 * (m + 1)),
                                           draw_discrete(d, P, nu, zero));
                    break;
                }
                case IdentityId::CN_TYPE2_TRAFO: {
                    cplx tc(d.uniform(-0.5, 0.5), d.uniform(-0.6, -0.25));
                    HalfInt L = HalfInt::of_int(n == 1 ? 0 : d.uniform_int(-1, 1));
                    // split the continuous balancing so Im(X) = 1 exactly,
                    // which keeps both partner halves on valid contours
                    double im_first = double(1 - n) * tc.imag() - 2.0;
                    cplx total = cplx(0, -4) - double(2 * n - 2) * tc;
                    auto first = draw_balanced(d, 4, d.uniform(-1, 1), im_first);
                    cplx rest = total - (first[0] + first[1] + first[2] + first[3]);
                    auto second = draw_balanced(d, 4, rest.real(), rest.imag());
                    auto Nv = draw_discrete(d, 8, nu, zero - (2 * n - 2) * L);
                    std::vector<cplx> av(first);
                    av.insert(av.end(), second.begin(), second.end());
                    inst.params["a"] = zip(av, Nv);
                    inst.params["t"] = {{tc, L}};
                    break;
                }
                case IdentityId::AN_TRAFO: {
                    int P = n + m + 2;
                    // split so that Im(C) = Im(D) = -(m+1): the partner maps
                    // C/(m+1) - a then have Im = -1 - Im(a)
                    auto av = draw_balanced(d, P, d.uniform(-1, 1), -double(m + 1));
                    cplx C = 0;
                    for (auto& z : av) C += z;
                    cplx Dtarget = cplx(0, -2.0 * (m + 1)) - C;
                    auto bv = draw_balanced(d, P, Dtarget.real(), Dtarget.imag());
                    auto Nall = draw_discrete(d, 2 * P, nu, zero);
                    inst.params["a"] = zip(av, {Nall.begin(), Nall.begin() + P});
                    inst.params["b"] = zip(bv, {Nall.begin() + P, Nall.end()});
                    break;
                }
                case IdentityId::CN_TRAFO_DEGEN: {
                    int P = 2 * n + 2 * m + 2;
                    double target = -2.0 * m - 1.0;
                    auto av = draw_balanced(d, P, d.uniform(-1, 1), target);
                    std::vector<HalfInt> Nv(P);
                    for (int i = 0; i < P; ++i) Nv[i] = HalfInt::of_int(d.uniform_int(-1, 1)) + nu;
                    inst.params["a"] = zip(av, Nv);
                    break;
                }
                case IdentityId::AN_TRAFO_DEGEN: {
                    int P = n + m + 1;
                    double target = -2.0 * m - 1.0;
                    auto all = draw_balanced(d, 2 * P, d.uniform(-1, 1), target);
                    std::vector<HalfInt> Na(P), Nb(P);
                    for (int i = 0; i < P; ++i) {
                        Na[i] = HalfInt::of_int(d.uniform_int(-1, 1)) + nu;
                        Nb[i] = HalfInt::of_int(d.uniform_int(-1, 1)) + nu;
                    }
                    inst.params["a"] = zip({all.begin(), all.begin() + P}, Na);
                    inst.params["b"] = zip({all.begin() + P, all.end()}, Nb);
                    break;
                }
                case IdentityId::RAT_CN: {
                    int P = 2 * n + 4;
                    auto av = draw_balanced(d, P, 0.0, 0.0);
                    auto Nv = draw_discrete(d, P, nu, HalfInt::of_int(2));
                    inst.params["a"] = zip(av, Nv);
                    break;
                }
                case IdentityId::RAT_AN: {
                    int P = n + 2;
                    auto all = draw_balanced(d, 2 * P, 0.0, 0.0);
                    auto Nall = draw_discrete(d, 2 * P, nu, HalfInt::of_int(2));
                    inst.params["a"] = zip({all.begin(), all.begin() + P},
                                           {Nall.begin(), Nall.begin() + P});
                    inst.params["b"] = zip({all.begin() + P, all.end()},
                                           {Nall.begin() + P, Nall.end()});
                    break;
                }
            }
        } catch (const std::runtime_error&) {
            continue; // discrete draw exhausted; redraw continuous parts too
        }
        bool rational = id == IdentityId::RAT_CN || id == IdentityId::RAT_AN;
        if (rational) return inst; // rational kernels carry no contour margins
        if (validate(inst).empty()) return inst;
    }
    throw std::runtime_error("sample_params: rejection sampling exhausted after 1e4 attempts");
}

} // namespace rsbeta
