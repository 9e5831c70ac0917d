#include "rsbeta/identities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rsbeta {

const std::vector<ParamPoint>& IdentityInstance::vec(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end())
        throw std::invalid_argument("instance missing parameter vector '" + name + "'");
    return it->second;
}

namespace {

const std::vector<IdentityDescriptor>& catalog_impl() {
    static const std::vector<IdentityDescriptor> entries = {
        {IdentityId::STAR_TRIANGLE_MB, "STAR_TRIANGLE_MB",
         "star-triangle relation as a bilateral Mellin-Barnes sum-integral",
         Family::mb_star_triangle, false, false, false},
        {IdentityId::CN_BETA, "CN_BETA", "C_n beta-integral evaluation, 2n+4 parameters",
         Family::c_type, false, false, false},
        {IdentityId::AN_BETA, "AN_BETA", "A_n type I beta-integral evaluation",
         Family::a_type_constrained, false, false, false},
        {IdentityId::SELBERG_MB, "SELBERG_MB",
         "Selberg-type C_n evaluation with a coupling pair (type II)",
         Family::type2_c, false, false, false},
        {IdentityId::AN_TYPE2, "AN_TYPE2", "A_n type II sum with odd/even closed forms",
         Family::type2_a, false, false, false},
        {IdentityId::AN_DEGEN_FULL, "AN_DEGEN_FULL",
         "A_n degeneration with n+2 parameter pairs (free lattice)",
         Family::a_type_free, false, false, false},
        {IdentityId::AN_DEGEN_KONO, "AN_DEGEN_KONO",
         "A_n degeneration with n+1 pairs and a one-sided convergence window",
         Family::a_type_free, false, false, true},
        {IdentityId::CN_AW, "CN_AW",
         "C_n Askey-Wilson-type degeneration with 2n+2 parameters",
         Family::c_type, false, false, true},
        {IdentityId::CN_TRAFO, "CN_TRAFO", "C_n <-> C_m symmetry transformation",
         Family::c_type, true, true, false},
        {IdentityId::CN_TYPE2_TRAFO, "CN_TYPE2_TRAFO",
         "type II C_n transformation with 8 parameters and a coupling pair",
         Family::type2_c, true, false, false},
        {IdentityId::AN_TRAFO, "AN_TRAFO", "A_n <-> A_m symmetry transformation",
         Family::a_type_constrained, true, true, false},
        {IdentityId::CN_TRAFO_DEGEN, "CN_TRAFO_DEGEN",
         "degenerate C_n <-> C_m transformation, two-sided window",
         Family::c_type, true, true, true},
        {IdentityId::AN_TRAFO_DEGEN, "AN_TRAFO_DEGEN",
         "degenerate A_n <-> A_m transformation, two-sided window",
         Family::a_type_free, true, true, true},
        {IdentityId::RAT_CN, "RAT_CN", "rational C_n kernel (Pochhammer integrand)",
         Family::rational_c, false, false, false},
        {IdentityId::RAT_AN, "RAT_AN", "rational A_n kernel (Pochhammer integrand)",
         Family::rational_a, false, false, false},
    };
    return entries;
}

} // namespace

const std::vector<IdentityDescriptor>& catalog() { return catalog_impl(); }

const IdentityDescriptor& descriptor(IdentityId id) {
    for (const auto& d : catalog_impl())
        if (d.id == id) return d;
    throw std::logic_error("descriptor: unknown identity");
}

IdentityId identity_from_name(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    if (up == "MB") return IdentityId::STAR_TRIANGLE_MB;
    if (up == "SELBERG") return IdentityId::SELBERG_MB;
    for (const auto& d : catalog_impl())
        if (up == d.name) return d.id;
    throw std::invalid_argument("unknown identity name '" + name + "'");
}

std::vector<std::pair<std::string, int>> param_schema(IdentityId id, int n, int m) {
    switch (id) {
        case IdentityId::STAR_TRIANGLE_MB: return {{"b", 3}, {"a", 3}};
        case IdentityId::CN_BETA: return {{"a", 2 * n + 4}};
        case IdentityId::AN_BETA: return {{"a", n + 2}, {"b", n + 2}};
        case IdentityId::SELBERG_MB: return {{"g", 6}, {"t", 1}};
        case IdentityId::AN_TYPE2: return {{"a", 3}, {"b", 3}, {"ta", 1}, {"tb", 1}};
        case IdentityId::AN_DEGEN_FULL: return {{"a", n + 2}, {"b", n + 2}};
        case IdentityId::AN_DEGEN_KONO: return {{"a", n + 1}, {"b", n + 1}};
        case IdentityId::CN_AW: return {{"a", 2 * n + 2}};
        case IdentityId::CN_TRAFO: return {{"a", 2 * n + 2 * m + 4}};
        case IdentityId::CN_TYPE2_TRAFO: return {{"a", 8}, {"t", 1}};
        case IdentityId::AN_TRAFO: return {{"a", n + m + 2}, {"b", n + m + 2}};
        case IdentityId::CN_TRAFO_DEGEN: return {{"a", 2 * n + 2 * m + 2}};
        case IdentityId::AN_TRAFO_DEGEN: return {{"a", n + m + 1}, {"b", n + m + 1}};
        case IdentityId::RAT_CN: return {{"a", 2 * n + 4}};
        case IdentityId::RAT_AN: return {{"a", n + 2}, {"b", n + 2}};
    }
    throw std::logic_error("param_schema: unknown identity");
}

namespace {

double sum_im(const std::vector<ParamPoint>& v) {
    double s = 0;
    for (const auto& p : v) s += p.a.imag();
    return s;
}

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

double window_sum(const IdentityInstance& inst) {
    switch (inst.id) {
        case IdentityId::AN_DEGEN_KONO:
        case IdentityId::AN_TRAFO_DEGEN:
            return sum_im(inst.vec("a")) + sum_im(inst.vec("b"));
        case IdentityId::CN_AW:
        case IdentityId::CN_TRAFO_DEGEN:
            return sum_im(inst.vec("a"));
        default: return 0.0;
    }
}

} // namespace

double decay_exponent(IdentityId id, int n, int m, double s) {
    (void)n;
    switch (id) {
        case IdentityId::STAR_TRIANGLE_MB: return -4.0;
        case IdentityId::AN_DEGEN_FULL: return -4.0;
        case IdentityId::CN_BETA:
        case IdentityId::AN_BETA:
        case IdentityId::SELBERG_MB:
        case IdentityId::AN_TYPE2:
        case IdentityId::CN_TRAFO:
        case IdentityId::CN_TYPE2_TRAFO:
        case IdentityId::AN_TRAFO: return -6.0;
        case IdentityId::AN_DEGEN_KONO: return -s - 4.0;
        case IdentityId::CN_AW: return -2.0 * s - 6.0;
        case IdentityId::CN_TRAFO_DEGEN: return -2.0 * s - 4.0 * m - 6.0;
        case IdentityId::AN_TRAFO_DEGEN: return -s - 2.0 * m - 4.0;
        case IdentityId::RAT_CN:
        case IdentityId::RAT_AN: return -6.0;
    }
    throw std::logic_error("decay_exponent: unknown identity");
}

double decay_exponent(const IdentityInstance& inst) {
    return decay_exponent(inst.id, inst.rank_n, inst.rank_m, window_sum(inst));
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

namespace {

void check_margin(const IdentityInstance& inst, const std::string& name, double margin,
                  std::vector<std::string>& out) {
    int i = 0;
    for (const auto& p : inst.vec(name)) {
        if (p.a.imag() > -margin)
            out.push_back("contour margin: Im(" + name + "[" + std::to_string(i) +
                          "]) = " + std::to_string(p.a.imag()) + " > -" + std::to_string(margin));
        ++i;
    }
}

void check_cont_balancing(cplx actual, cplx target, const std::string& label,
                          std::vector<std::string>& out) {
    if (std::abs(actual - target) > 1e-12)
        out.push_back("continuous balancing: " + label);
}

void check_disc_balancing(HalfInt actual, HalfInt target, const std::string& label,
                          std::vector<std::string>& out) {
    if (actual != target)
        out.push_back("discrete balancing: " + label);
}

void check_parity(const IdentityInstance& inst, const std::string& name,
                  std::vector<std::string>& out) {
    for (const auto& p : inst.vec(name))
        if (p.N.parity() != inst.nu.parity())
            out.push_back("parity: vector '" + name + "' not in Z + nu");
}

} // namespace

std::vector<std::string> validate(const IdentityInstance& inst, double margin) {
    std::vector<std::string> out;
    const auto& desc = descriptor(inst.id);
    const int n = inst.rank_n, m = inst.rank_m;

    if (n < 1) out.push_back("rank_n must be >= 1");
    if (desc.uses_rank_m && m < 1) out.push_back("rank_m must be >= 1 for this identity");

    // schema completeness
    for (auto& [name, count] : param_schema(inst.id, n, m)) {
        auto it = inst.params.find(name);
        if (it == inst.params.end() || int(it->second.size()) != count) {
            out.push_back("schema: vector '" + name + "' must have " + std::to_string(count) +
                          " entries");
            return out;
        }
    }

    const cplx m2i(0, -2);
    switch (inst.id) {
        case IdentityId::STAR_TRIANGLE_MB: {
            if (inst.nu != nu_zero) out.push_back("parity: only nu = 0 is admissible");
            check_cont_balancing(sum_a(inst.vec("b")) + sum_a(inst.vec("a")), m2i,
                                 "sum(b)+sum(a) must equal -2i", out);
            check_disc_balancing(sum_N(inst.vec("b")) + sum_N(inst.vec("a")), HalfInt::of_int(0),
                                 "sum of discrete parts must vanish", out);
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            break;
        }
        case IdentityId::CN_BETA: {
            check_cont_balancing(sum_a(inst.vec("a")), m2i, "sum(a) must equal -2i", out);
            check_disc_balancing(sum_N(inst.vec("a")), HalfInt::of_int(0), "sum(N) must vanish",
                                 out);
            check_margin(inst, "a", margin, out);
            check_parity(inst, "a", out);
            break;
        }
        case IdentityId::AN_BETA: {
            if ((n % 2) == 0 && inst.nu != nu_zero)
                out.push_back("parity inadmissible for even n: nu must be 0");
            check_cont_balancing(sum_a(inst.vec("a")) + sum_a(inst.vec("b")), m2i,
                                 "sum(a)+sum(b) must equal -2i", out);
            check_disc_balancing(sum_N(inst.vec("a")) + sum_N(inst.vec("b")), HalfInt::of_int(0),
                                 "sum(N)+sum(M) must vanish", out);
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            break;
        }
        case IdentityId::SELBERG_MB: {
            const auto& t = inst.vec("t")[0];
            if (!t.N.is_integer()) out.push_back("coupling exponent r must be an integer");
            check_cont_balancing(double(2 * n - 2) * t.a + sum_a(inst.vec("g")), m2i,
                                 "(2n-2) gamma + sum(gamma_l) must equal -2i", out);
            check_disc_balancing((2 * n - 2) * t.N + sum_N(inst.vec("g")), HalfInt::of_int(0),
                                 "(2n-2) r + sum(r_l) must vanish", out);
            check_margin(inst, "g", margin, out);
            check_margin(inst, "t", margin, out);
            check_parity(inst, "g", out);
            break;
        }
        case IdentityId::AN_TYPE2: {
            if ((n % 2) == 0 && inst.nu != nu_zero)
                out.push_back("parity inadmissible for even n: nu must be 0");
            const auto& ta = inst.vec("ta")[0];
            const auto& tb = inst.vec("tb")[0];
            if (!ta.N.is_integer() || !tb.N.is_integer())
                out.push_back("coupling discrete parts N, M must be integers");
            check_cont_balancing(
                double(n - 1) * (ta.a + tb.a) + sum_a(inst.vec("a")) + sum_a(inst.vec("b")), m2i,
                "(n-1)(a+b) + sum(a_k+b_k) must equal -2i", out);
            check_disc_balancing((n - 1) * (ta.N + tb.N) + sum_N(inst.vec("a")) +
                                     sum_N(inst.vec("b")),
                                 HalfInt::of_int(0), "(n-1)(N+M) + sum(N_k+M_k) must vanish", out);
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_margin(inst, "ta", margin, out);
            check_margin(inst, "tb", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            break;
        }
        case IdentityId::AN_DEGEN_FULL: {
            check_cont_balancing(sum_a(inst.vec("a")) + sum_a(inst.vec("b")), m2i,
                                 "sum(a)+sum(b) must equal -2i", out);
            check_disc_balancing(sum_N(inst.vec("a")) + sum_N(inst.vec("b")), HalfInt::of_int(0),
                                 "sum(N)+sum(M) must vanish", out);
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            break;
        }
        case IdentityId::AN_DEGEN_KONO: {
            double s = window_sum(inst);
            if (!(s > -2.0)) out.push_back("convergence window: sum Im(a+b) must exceed -2");
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            break;
        }
        case IdentityId::CN_AW: {
            double s = window_sum(inst);
            if (!(s > -2.0)) out.push_back("convergence window: sum Im(a) must exceed -2");
            check_margin(inst, "a", margin, out);
            check_parity(inst, "a", out);
            break;
        }
        case IdentityId::CN_TRAFO: {
            check_cont_balancing(sum_a(inst.vec("a")), cplx(0, -2.0 * (m + 1)),
                                 "sum(a) must equal -2i(m+1)", out);
            check_disc_balancing(sum_N(inst.vec("a")), HalfInt::of_int(0), "sum(N) must vanish",
                                 out);
            check_margin(inst, "a", margin, out);
            check_parity(inst, "a", out);
            // partner contour: Im(-i - a) <= -margin
            for (const auto& p : inst.vec("a"))
                if (-1.0 - p.a.imag() > -margin)
                    out.push_back("partner contour margin: Im(-i-a) > -margin");
            break;
        }
        case IdentityId::CN_TYPE2_TRAFO: {
            const auto& t = inst.vec("t")[0];
            const auto& a = inst.vec("a");
            if (!t.N.is_integer()) out.push_back("coupling discrete part L must be an integer");
            check_cont_balancing(double(2 * n - 2) * t.a + sum_a(a), cplx(0, -4),
                                 "(2n-2) gamma + sum(a) must equal -4i", out);
            check_disc_balancing((2 * n - 2) * t.N + sum_N(a), HalfInt::of_int(0),
                                 "(2n-2) L + sum(N) must vanish", out);
            check_margin(inst, "a", margin, out);
            check_margin(inst, "t", margin, out);
            check_parity(inst, "a", out);
            // partner contour via the xi-shift
            cplx X = 0.5 * (double(1 - n) * t.a - (a[0].a + a[1].a + a[2].a + a[3].a));
            for (int j = 0; j < 4; ++j) {
                if ((a[j].a - cplx(0, 1) + X).imag() > -margin)
                    out.push_back("partner contour margin: Im(a_j - i + X) > -margin");
                if ((a[j + 4].a + cplx(0, 1) - X).imag() > -margin)
                    out.push_back("partner contour margin: Im(a_{j+4} + i - X) > -margin");
            }
            break;
        }
        case IdentityId::AN_TRAFO: {
            if ((n % 2) == 0 && inst.nu != nu_zero)
                out.push_back("parity inadmissible for even n: nu must be 0");
            cplx C = sum_a(inst.vec("a")), D = sum_a(inst.vec("b"));
            check_cont_balancing(C + D, cplx(0, -2.0 * (m + 1)),
                                 "sum(a)+sum(b) must equal -2i(m+1)", out);
            check_disc_balancing(sum_N(inst.vec("a")) + sum_N(inst.vec("b")), HalfInt::of_int(0),
                                 "sum(N)+sum(M) must vanish", out);
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            for (const auto& p : inst.vec("a"))
                if ((C / double(m + 1) - p.a).imag() > -margin)
                    out.push_back("partner contour margin: Im(C/(m+1) - a) > -margin");
            for (const auto& p : inst.vec("b"))
                if ((D / double(m + 1) - p.a).imag() > -margin)
                    out.push_back("partner contour margin: Im(D/(m+1) - b) > -margin");
            break;
        }
        case IdentityId::CN_TRAFO_DEGEN: {
            double s = window_sum(inst);
            if (!(s > -2.0 * m - 2.0 && s < -2.0 * m))
                out.push_back("convergence window: sum Im(a) must lie in (-2m-2, -2m)");
            check_margin(inst, "a", margin, out);
            check_parity(inst, "a", out);
            for (const auto& p : inst.vec("a"))
                if (-1.0 - p.a.imag() > -margin)
                    out.push_back("partner contour margin: Im(-i-a) > -margin");
            break;
        }
        case IdentityId::AN_TRAFO_DEGEN: {
            double s = window_sum(inst);
            if (!(s > -2.0 * m - 2.0 && s < -2.0 * m))
                out.push_back("convergence window: sum Im(a+b) must lie in (-2m-2, -2m)");
            check_margin(inst, "a", margin, out);
            check_margin(inst, "b", margin, out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            for (const auto& name : {"a", "b"})
                for (const auto& p : inst.vec(name))
                    if (-1.0 - p.a.imag() > -margin)
                        out.push_back("partner contour margin: Im(-i-" + std::string(name) +
                                      ") > -margin");
            break;
        }
        case IdentityId::RAT_CN: {
            check_cont_balancing(sum_a(inst.vec("a")), cplx(0, 0), "sum(a) must vanish", out);
            check_disc_balancing(sum_N(inst.vec("a")), HalfInt::of_int(2), "sum(N) must equal 2",
                                 out);
            check_parity(inst, "a", out);
            break;
        }
        case IdentityId::RAT_AN: {
            if ((n % 2) == 0 && inst.nu != nu_zero)
                out.push_back("parity inadmissible for even n: nu must be 0");
            check_cont_balancing(sum_a(inst.vec("a")) + sum_a(inst.vec("b")), cplx(0, 0),
                                 "sum(a)+sum(b) must vanish", out);
            check_disc_balancing(sum_N(inst.vec("a")) + sum_N(inst.vec("b")), HalfInt::of_int(2),
                                 "sum(N)+sum(M) must equal 2", out);
            check_parity(inst, "a", out);
            check_parity(inst, "b", out);
            break;
        }
    }

    // pole-proximity guard: contour poles sit at distance |Im(a)| from the
    // axis; anything closer than 0.05 is flagged for resampling
    if (inst.id != IdentityId::RAT_CN && inst.id != IdentityId::RAT_AN) {
        for (auto& [name, v] : inst.params)
            for (const auto& p : v)
                if (std::abs(p.a.imag()) < 0.05)
                    out.push_back("pole within 0.05 of the contour (vector '" + name + "')");
    }
    return out;
}

} // namespace rsbeta
