#include "doctest.h"

#include <cmath>
#include <random>

#include "rsbeta/elliptic.hpp"
#include "rsbeta/hyp_gamma.hpp"
#include "rsbeta/limit_scan.hpp"

using namespace rsbeta;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
const cplx I(0, 1);
} // namespace

TEST_CASE("b22: examples and symmetries") {
    QuasiPeriods w{cplx(1, 0), cplx(1, 0)};
    CHECK(rel(b22(w.Q() / 2.0, w), cplx(-1.0 / 6.0, 0)) < 1e-15);
    CHECK(rel(b22(cplx(0, 0), w), cplx(5.0 / 6.0, 0)) < 1e-15);

    std::mt19937_64 g(3);
    auto u01 = [&] { return double(g() >> 11) * 0x1.0p-53; };
    for (int t = 0; t < 20; ++t) {
        cplx u(2 * u01() - 1, 2 * u01() - 1);
        QuasiPeriods a{cplx(0.5 + u01(), u01() - 0.5), cplx(0.5 + u01(), u01() - 0.5)};
        QuasiPeriods b{a.w2, a.w1};
        CHECK(rel(b22(u, a), b22(u, b)) < 1e-14);
        CHECK(rel(b22(u, a), b22(a.Q() - u, a)) < 1e-13); // depends on (u-Q/2)^2
    }
}

TEST_CASE("QuasiPeriods invariants") {
    QuasiPeriods bad{cplx(-1, 0), cplx(1, 0)};
    CHECK_THROWS_AS(bad.check(), std::domain_error);
}

TEST_CASE("q_pochhammer_inf: examples") {
    CHECK(q_pochhammer_inf(cplx(0, 0), cplx(0.5, 0)) == cplx(1, 0));
    CHECK(rel(q_pochhammer_inf(cplx(0.3, 0.1), cplx(0, 0)), cplx(0.7, -0.1)) < 1e-15);
    // truncated-product oracle
    CHECK(rel(q_pochhammer_inf(cplx(0.5, 0), cplx(0.5, 0)),
              cplx(0.2887880950866024212788997, 0)) < 1e-14);
    CHECK(rel(q_pochhammer_inf(cplx(0.3, 0.4), cplx(0.5, -0.2)),
              cplx(0.38268366901252410608, -0.2868841980568091619)) < 1e-14);
    CHECK_THROWS_AS(q_pochhammer_inf(cplx(0.5, 0), cplx(1.0, 0)), std::domain_error);
}

TEST_CASE("ell_gamma: p=0 collapse, base symmetry, truncation stability") {
    cplx z(0.31, 0.17);
    EllipticBases b0{cplx(0, 0), cplx(0.45, 0.1)};
    CHECK(rel(ell_gamma(z, b0), 1.0 / q_pochhammer_inf(z, b0.q)) < 1e-13);

    EllipticBases b1{cplx(0.4, 0.12), cplx(-0.25, 0.3)};
    EllipticBases b2{b1.q, b1.p};
    CHECK(rel(ell_gamma(z, b1), ell_gamma(z, b2)) < 1e-12);

    EllipticBases bad{cplx(1.2, 0), cplx(0.3, 0)};
    CHECK_THROWS_AS(ell_gamma(z, bad), std::domain_error);
    // pole lattice z = p^{-j} q^{-k}
    EllipticBases bp{cplx(0.5, 0), cplx(0.25, 0)};
    CHECK_THROWS_AS(ell_gamma(cplx(4.0, 0), bp), pole_error); // z = p^{-2}
}

TEST_CASE("hyp_gamma: midpoint and frozen value") {
    QuasiPeriods w{cplx(1, 0), cplx(1, 0)};
    CHECK(rel(hyp_gamma(w.Q() / 2.0, w, HypRep::integral), cplx(1, 0)) < 1e-11);
    // gamma^(2)(1/2; 1,1) = 1/sqrt(2) (independent high-precision quadrature)
    CHECK(rel(hyp_gamma(cplx(0.5, 0), w, HypRep::integral),
              cplx(0.70710678118654752440, 0)) < 1e-10);
    QuasiPeriods w2{cplx(1, 0), cplx(1.2, 0)};
    CHECK(rel(hyp_gamma(cplx(0.77, 0), w2, HypRep::integral),
              cplx(0.76134158784424591254747666433, 0)) < 1e-10);
}

TEST_CASE("hyp_gamma: cross-representation agreement on the overlap domain") {
    QuasiPeriods w{cplx(1, 0), std::polar(1.0, M_PI / 4)};
    cplx u = 0.3 * w.Q();
    cplx vi = hyp_gamma(u, w, HypRep::integral);
    cplx vp = hyp_gamma(u, w, HypRep::product);
    CHECK(rel(vi, vp) < 1e-9);

    std::mt19937_64 g(5);
    auto u01 = [&] { return double(g() >> 11) * 0x1.0p-53; };
    for (int t = 0; t < 12; ++t) {
        QuasiPeriods wr{cplx(0.6 + u01(), 0.4 * u01()), cplx(0.6 + u01(), -0.4 * u01() - 0.2)};
        cplx ur = (0.2 + 0.6 * u01()) * wr.Q() + cplx(0, 0.3 * (u01() - 0.5));
        CHECK(rel(hyp_gamma(ur, wr, HypRep::integral), hyp_gamma(ur, wr, HypRep::product)) < 1e-9);
    }
}

TEST_CASE("hyp_gamma: homogeneity") {
    std::mt19937_64 g(7);
    auto u01 = [&] { return double(g() >> 11) * 0x1.0p-53; };
    for (double lam : {2.0, 1.0 / 3.0, 1.7}) {
        for (int t = 0; t < 17; ++t) {
            QuasiPeriods w{cplx(0.5 + u01(), 0.3 * u01()), cplx(0.5 + u01(), -0.3 * u01() - 0.1)};
            cplx u = (0.15 + 0.7 * u01()) * w.Q();
            QuasiPeriods wl{lam * w.w1, lam * w.w2};
            CHECK(rel(hyp_gamma(lam * u, wl), hyp_gamma(u, w)) < 1e-10);
        }
    }
}

TEST_CASE("hyp_gamma: shift relations validated against the product rep") {
    CHECK(hyp_shift_relations_validated());
    // strip extension agrees with the product representation outside the strip
    QuasiPeriods w{cplx(1.0, 0.0), std::polar(1.0, 0.5)};
    cplx u = -0.4 + 0.2 * w.Q(); // left of the strip
    CHECK(rel(hyp_gamma(u, w, HypRep::integral), hyp_gamma(u, w, HypRep::product)) < 1e-8);
    cplx u2 = w.Q() * 1.15; // right of the strip
    CHECK(rel(hyp_gamma(u2, w, HypRep::integral), hyp_gamma(u2, w, HypRep::product)) < 1e-8);
}

TEST_CASE("hyp_gamma: sector asymptotics") {
    QuasiPeriods w{cplx(1, 0), cplx(1, 0)};
    // upper sector arg w1 < arg y < arg w2 + pi: limit e^{-i pi/2 B22}
    double prev_up = 1e9, prev_dn = 1e9;
    for (double R : {1.5, 3.0, 6.0}) {
        cplx u = w.Q() / 2.0 + I * R;
        cplx lim_up = std::exp(-I * M_PI / 2.0 * b22(u, w));
        double dev_up = std::abs(hyp_gamma(u, w, HypRep::integral) / lim_up - 1.0);
        CHECK(dev_up < prev_up);
        prev_up = dev_up;

        cplx u2 = w.Q() / 2.0 - I * R;
        cplx lim_dn = std::exp(I * M_PI / 2.0 * b22(u2, w));
        double dev_dn = std::abs(hyp_gamma(u2, w, HypRep::integral) / lim_dn - 1.0);
        CHECK(dev_dn < prev_dn);
        prev_dn = dev_dn;
    }
    CHECK(prev_up < 1e-8);
    CHECK(prev_dn < 1e-8);
}

TEST_CASE("limit_scan: hyp_to_complex ratios -> 1 monotone, order ~ 1") {
    LimitPoint pt;
    pt.n = 1;
    pt.x = cplx(0.4, 0.1);
    auto r = limit_scan(LimitMode::hyp_to_complex, pt, default_limit_grid(5));
    CHECK(r.rows.size() == 5);
    CHECK(r.monotone_last3);
    CHECK(r.fitted_order == doctest::Approx(1.0).epsilon(0.35));
    // deeper grid reaches the 1e-3 extrapolation target
    auto r7 = limit_scan(LimitMode::hyp_to_complex, pt, default_limit_grid(7));
    CHECK(std::abs(r7.extrapolated - 1.0) < 1e-3);
}

TEST_CASE("limit_scan: hyp_to_rational") {
    LimitPoint pt;
    pt.n = 2;
    pt.x = cplx(0.7, 0);
    auto r = limit_scan(LimitMode::hyp_to_rational, pt, default_limit_grid(5));
    CHECK(r.monotone_last3);
    CHECK(r.fitted_order == doctest::Approx(1.0).epsilon(0.25));
    CHECK(std::abs(r.extrapolated - 1.0) < 1e-3);
}

TEST_CASE("limit_scan: ell_to_hyp") {
    LimitPoint pt;
    pt.u = cplx(0.3, 0);
    pt.w = QuasiPeriods{cplx(1, 0), cplx(1.2, 0)};
    std::vector<double> grid = {0.1, 0.05, 0.025};
    auto r = limit_scan(LimitMode::ell_to_hyp, pt, grid);
    CHECK(r.monotone_last3);
    CHECK(std::abs(r.extrapolated - 1.0) < 1e-3);
    for (const auto& row : r.rows) CHECK(row.abs_ratio_m1 < 0.01);
    auto csv = limit_scan_csv(r);
    CHECK(csv.find("delta,") == 0);
    auto js = limit_scan_json(r);
    CHECK(js.find("\"ell_to_hyp\"") != std::string::npos);
}
