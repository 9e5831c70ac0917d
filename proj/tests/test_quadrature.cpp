#include "doctest.h"

#include <cmath>

#include "rsbeta/quadrature.hpp"

using namespace rsbeta;

TEST_CASE("integrate_1d: Gaussian") {
    auto r = integrate_1d([](double x) { return cplx(std::exp(-x * x), 0); }, 12.0, 1e-12);
    CHECK(std::abs(r.value.real() - std::sqrt(M_PI)) < 1e-10);
    CHECK(std::abs(r.value.imag()) < 1e-14);
}

TEST_CASE("integrate_1d: odd integrand cancels exactly") {
    auto r = integrate_1d([](double x) { return cplx(x * std::exp(-std::abs(x) / 3.0), 0); },
                          40.0, 1e-10);
    CHECK(r.value.real() == 0.0);
    CHECK(r.value.imag() == 0.0);
}

TEST_CASE("integrate_1d: rational kernel with power-law tail") {
    // x^2 / ((1+x^2)(4+x^2)(9+x^2)(16+x^2)) over R = pi/1260
    auto f = [](double x) {
        double x2 = x * x;
        return cplx(x2 / ((1 + x2) * (4 + x2) * (9 + x2) * (16 + x2)), 0);
    };
    auto r = integrate_1d(f, 200.0, 1e-10);
    CHECK(std::abs(r.value.real() - M_PI / 1260.0) / (M_PI / 1260.0) < 1e-9);
    CHECK(std::abs(r.value.real() - M_PI / 1260.0) < 3 * r.err + 1e-13);
}

TEST_CASE("integrate_1d: tail extrapolation beats drop mode on slow decay") {
    auto f = [](double x) { return cplx(1.0 / std::pow(1.0 + x * x, 2), 0); }; // integral pi/2
    auto keep = integrate_1d(f, 30.0, 1e-10, QuadConfig::TailMode::power_law_extrapolation);
    auto drop = integrate_1d(f, 30.0, 1e-10, QuadConfig::TailMode::drop);
    double exact = M_PI / 2;
    CHECK(std::abs(keep.value.real() - exact) < std::abs(drop.value.real() - exact) / 50.0);
    CHECK(std::abs(keep.value.real() - exact) / exact < 1e-6);
}

TEST_CASE("integrate_interval: oscillatory") {
    auto r = integrate_interval([](double t) { return cplx(std::cos(9.5 * t), std::sin(9.5 * t)); },
                                0.0, M_PI, 1e-12);
    CHECK(std::abs(r.value.real() - std::sin(9.5 * M_PI) / 9.5) < 1e-11);
    CHECK(std::abs(r.value.imag() - (1.0 - std::cos(9.5 * M_PI)) / 9.5) < 1e-11);
}

TEST_CASE("integrate_nd: separable product") {
    QuadConfig cfg;
    cfg.x_max = 12.0;
    cfg.tol_rel = 1e-9;
    auto f2 = [](const double* x) {
        return cplx(std::exp(-x[0] * x[0] - 2.0 * x[1] * x[1]), 0);
    };
    auto r = integrate_nd(f2, 2, cfg);
    double exact = std::sqrt(M_PI) * std::sqrt(M_PI / 2.0);
    CHECK(std::abs(r.value.real() - exact) / exact < 1e-7);
    CHECK(std::abs(r.value.real() - exact) < 3 * r.err + 1e-12);
}

TEST_CASE("integrate_nd: argument order symmetry within error") {
    QuadConfig cfg;
    cfg.x_max = 15.0;
    cfg.tol_rel = 1e-8;
    auto f = [](const double* x) {
        double a = x[0], b = x[1];
        return cplx(std::exp(-(a * a + b * b) - 0.3 * a * b), 0);
    };
    auto fswap = [](const double* x) {
        double a = x[1], b = x[0];
        return cplx(std::exp(-(a * a + b * b) - 0.3 * a * b), 0);
    };
    auto r1 = integrate_nd(f, 2, cfg);
    auto r2 = integrate_nd(fswap, 2, cfg);
    CHECK(std::abs(r1.value - r2.value) <= r1.err + r2.err + 1e-12);
}

TEST_CASE("QuadConfig invariants") {
    QuadConfig bad;
    bad.x_max = 5.0;
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);
    bad = QuadConfig{};
    bad.n_lattice_max = 2;
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);
    bad = QuadConfig{};
    bad.tol_rel = 0;
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}
