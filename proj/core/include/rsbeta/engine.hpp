#pragma once

#include <string>

#include "rsbeta/identities.hpp"
#include "rsbeta/quadrature.hpp"

namespace rsbeta {

struct BilateralResult {
    cplx value{};
    double err = 0.0;
    long shells = 0;
    long evals = 0;
    long pole_hits = 0;
    bool converged = true;
    std::string note;
};

/// Sums the bilateral lattice shells |m|_inf = nu, 1+nu, 2+nu, ... of
/// dim-dimensional contour integrals until the last shell contributes
/// <= tol/4 and the fitted power-law tail bound is <= tol/4. Shell points
/// are enumerated in a fixed order with m and -m adjacent, integrals of a
/// shell run on a worker pool, and the reduction is an ordered compensated
/// sum, so results are bit-reproducible for fixed inputs.
///
/// Refuses integrands with decay exponent > -3 (conditionally convergent).
BilateralResult bilateral_evaluate(const LatticeIntegrand& f, const QuadConfig& config);

/// Outcome of one identity verification; pass requires
/// rel_err <= tol_rel and error estimate <= 3 tol_rel |rhs|.
struct VerificationReport {
    std::string identity;
    int rank_n = 1, rank_m = 0;
    std::string nu;
    std::uint64_t seed = 0;
    cplx lhs{}, rhs{};
    double lhs_err = 0;
    double rel_err = 0;
    bool pass = false;
    long shells = 0;
    long evals = 0;
    double seconds = 0;
    std::string diagnostics;

    std::string to_json() const;
    std::string to_csv_row() const;
    static std::string csv_header();
    std::string to_md_row() const;
    static std::string md_header();
};

/// Runs the full verification of an identity instance: evaluates the
/// lattice sum of the LHS and compares against the closed form -- or, for
/// transformations, against prefactor x partner lattice sum. Engine
/// failures (non-convergence, lattice poles) are reported in the
/// diagnostics of a failed report; invalid instances throw
/// std::invalid_argument.
VerificationReport verify(const IdentityInstance& inst, const QuadConfig& config);

} // namespace rsbeta
