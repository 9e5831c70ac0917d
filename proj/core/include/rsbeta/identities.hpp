#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsbeta/complex_gamma.hpp"
#include "rsbeta/half_int.hpp"

namespace rsbeta {

enum class IdentityId {
    STAR_TRIANGLE_MB,
    CN_BETA,
    AN_BETA,
    SELBERG_MB,
    AN_TYPE2,
    AN_DEGEN_FULL,
    AN_DEGEN_KONO,
    CN_AW,
    CN_TRAFO,
    CN_TYPE2_TRAFO,
    AN_TRAFO,
    CN_TRAFO_DEGEN,
    AN_TRAFO_DEGEN,
    RAT_CN,
    RAT_AN,
};

/// Structural family of the lattice-sum integrand.
enum class Family {
    mb_star_triangle, ///< one lattice var, three (b,n)/(a,m) pairs
    c_type,           ///< C_n measure/cross terms, params enter as a +- x
    a_type_free,      ///< A_n differences, n free vars, phase e^{i pi c sum m}
    a_type_constrained, ///< A_n differences, n+1 vars with sum x = 0, sum m = W
    type2_c,          ///< C_n with a (gamma, r) coupling pair
    type2_a,          ///< constrained A_n with (a,N),(b,M) coupling pairs
    rational_c,       ///< Pochhammer-kernel C_n (b -> 1 limit)
    rational_a,       ///< Pochhammer-kernel A_n (b -> 1 limit)
};

/// A paired continuous/discrete parameter (a, N), N in Z + nu.
struct ParamPoint {
    cplx a{};
    HalfInt N{};
};

/// A concrete identity instance: ranks, parity class and named parameter
/// vectors (see IdentityDescriptor::vector_names for the schema).
struct IdentityInstance {
    IdentityId id{};
    int rank_n = 1;
    int rank_m = 0; ///< transformations only
    HalfInt nu = nu_zero;
    std::map<std::string, std::vector<ParamPoint>> params;
    /// constrained A-type lattices sum to this value instead of 0
    /// (the partner side of the A_n transformation)
    HalfInt lattice_offset = nu_zero;
    std::uint64_t seed = 0;

    const std::vector<ParamPoint>& vec(const std::string& name) const;
};

/// Static catalog entry.
struct IdentityDescriptor {
    IdentityId id{};
    const char* name = "";
    const char* summary = "";
    Family family{};
    bool is_transformation = false;
    bool uses_rank_m = false;
    bool has_window = false;
};

const IdentityDescriptor& descriptor(IdentityId id);
const std::vector<IdentityDescriptor>& catalog();
IdentityId identity_from_name(const std::string& name); ///< accepts aliases (MB, ...)

/// Parameter schema: named vectors and their lengths for the given ranks.
std::vector<std::pair<std::string, int>> param_schema(IdentityId id, int n, int m);

/// Power-law exponent of the integrand modulus in each lattice variable
/// z_j = (m_j + i x_j)/2; `sum_im` is the identity-specific imaginary
/// parameter sum (only used by the window families).
double decay_exponent(IdentityId id, int n, int m, double sum_im = 0.0);
/// Convenience overload reading the parameter sum off the instance.
double decay_exponent(const IdentityInstance& inst);

/// Checks balancing (discrete exactly, continuous to 1e-12), contour
/// margins, convergence windows and parity admissibility. Returns the list
/// of violations; empty means valid.
std::vector<std::string> validate(const IdentityInstance& inst, double margin = 0.2);

/// Draws a deterministic-by-seed instance satisfying all constraints of
/// validate(). Throws std::runtime_error after 1e4 rejections and
/// std::domain_error for inadmissible (id, ranks, nu).
IdentityInstance sample_params(IdentityId id, int rank_n, int rank_m, HalfInt nu,
                               std::uint64_t seed);

/// The lattice-sum integrand of the identity's left-hand side. `dim` lattice
/// variables m_j in Z + nu and `dim` real integration variables.
struct LatticeIntegrand {
    int dim = 1;
    HalfInt nu = nu_zero;
    HalfInt lattice_offset = nu_zero; ///< free lattice vars are unconstrained;
                                      ///< this only shifts constrained families
    cplx prefactor{1, 0};             ///< combinatorial prefactor, applied once
    double decay = -6.0;
    /// value at lattice point m (length dim) and contour point x (length dim)
    std::function<cplx(const HalfInt*, const double*)> eval;
    /// integrand invariant under (m, x) -> (-m, -x)
    bool negation_symmetric = false;
};

LatticeIntegrand build_lhs(const IdentityInstance& inst);

/// Right-hand side: a closed-form value for evaluation identities, or a
/// prefactor plus partner instance for symmetry transformations.
struct RhsSpec {
    bool is_transformation = false;
    cplx value{};                             ///< closed form, or the prefactor
    std::optional<IdentityInstance> partner{};///< transformation partner
};

RhsSpec build_rhs(const IdentityInstance& inst);

/// JSON (de)serialization of instances; complex numbers as [re, im],
/// HalfInt as integers or "k/2" strings.
std::string instance_to_json(const IdentityInstance& inst);
IdentityInstance instance_from_json(const std::string& json_text);

} // namespace rsbeta
