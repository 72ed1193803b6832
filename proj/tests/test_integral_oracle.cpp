#include <doctest.h>

#include <cmath>

#include "relmod/integral_oracle.hpp"
#include "relmod/rng.hpp"
#include "relmod/standard_form.hpp"

using namespace relmod;

TEST_SUITE("integral_oracle") {

TEST_CASE("identity and scalar cases") {
    OracleResult<Matrix> r = frac_power_integral(Matrix::Identity(3, 3), 0.5);
    CHECK(op_norm(r.value - Matrix::Identity(3, 3)) <= 1e-8);

    Matrix d(1, 1);
    d(0, 0) = 4.0;
    r = frac_power_integral(d, 0.5);
    CHECK(r.value(0, 0).real() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("zero matrix and kernels") {
    CHECK(op_norm(frac_power_integral(Matrix::Zero(2, 2), 0.5).value) <= 1e-14);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 9.0;
    OracleResult<Matrix> r = frac_power_integral(d, 0.5);
    CHECK(r.value(0, 0).real() == doctest::Approx(3.0).epsilon(1e-7));
    CHECK(std::abs(r.value(1, 1)) <= 1e-7);
}

TEST_CASE("input validation") {
    Matrix h(2, 2);
    h << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(frac_power_integral(h, 0.5), NotPSDError);
    CHECK_THROWS_AS(frac_power_integral(Matrix::Identity(2, 2), 0.01), InputError);
    CHECK_THROWS_AS(frac_power_integral(Matrix::Identity(2, 2), 0.99), InputError);
}

TEST_CASE("agreement with the spectral path on a random matrix") {
    CounterRng rng(107);
    Matrix h = random_psd(rng, 8, 8);
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Matrix spectral = pseudo_power(h, s);
        OracleResult<Matrix> oracle = frac_power_integral(h, s);
        CHECK(op_norm(oracle.value - spectral) <=
              1e-6 * std::max(1.0, op_norm(spectral)));
    }
}

TEST_CASE("reported error shrinks as the target tightens") {
    CounterRng rng(109);
    Matrix h = random_psd(rng, 4, 4);
    QuadratureConfig loose;
    loose.target_rel_error = 1e-4;
    QuadratureConfig tight;
    tight.target_rel_error = 1e-10;
    OracleResult<Matrix> a = frac_power_integral(h, 0.3, loose);
    OracleResult<Matrix> b = frac_power_integral(h, 0.3, tight);
    CHECK(b.nodes_used >= a.nodes_used);
    CHECK(b.est_error <= a.est_error + 1e-16);
}

TEST_CASE("node budget exhaustion raises ConvergenceError") {
    CounterRng rng(127);
    Matrix h = random_psd(rng, 4, 4);
    QuadratureConfig cfg;
    cfg.target_rel_error = 1e-14;
    cfg.max_nodes = 180;
    CHECK_THROWS_AS(frac_power_integral(h, 0.5, cfg), ConvergenceError);
}

TEST_CASE("conditioning warning") {
    Matrix h = Matrix::Zero(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 1e-9;
    CHECK(frac_power_integral(h, 0.5).conditioning_warning);
    h(1, 1) = 1e-3;
    CHECK(!frac_power_integral(h, 0.5).conditioning_warning);
}

TEST_CASE("overlap_integral mirrors overlap_F") {
    Algebra a({2});
    Matrix p = Matrix::Zero(2, 2), q = Matrix::Zero(2, 2);
    p(0, 0) = 0.6;
    p(1, 1) = 0.4;
    q(0, 0) = 0.5;
    q(1, 1) = 0.5;
    NormalFunctional eta(a, {p}), phi(a, {q});
    CHECK(overlap_integral(eta, phi, 0.5).value ==
          doctest::Approx(std::sqrt(0.30) + std::sqrt(0.20)).epsilon(1e-6));

    CHECK(overlap_integral(eta, eta, 0.3).value ==
          doctest::Approx(eta.total()).epsilon(1e-6));

    CounterRng rng(131);
    Algebra b({3, 2});
    NormalFunctional f = random_functional(rng, b);
    NormalFunctional g = random_functional(rng, b);
    for (double s : {0.1, 0.5, 0.9}) {
        const double spectral = overlap_F(f, g, s);
        const double integral = overlap_integral(f, g, s).value;
        CHECK(std::abs(spectral - integral) <= 1e-6 * std::max(1.0, spectral));
    }
}

TEST_CASE("delta_resolvent_form consistency with the power integral") {
    // Integrating the resolvent form reproduces the overlap, which ties the
    // superoperator resolvent to the matrix-level quadrature.
    Algebra a({3});
    CounterRng rng(137);
    NormalFunctional phi = random_functional(rng, a);
    NormalFunctional eta = random_functional(rng, a);
    const double s = 0.4;
    // crude trapezoid over log lambda, enough for a sanity cross-check
    const double lo = -70.0, hi = 45.0;
    const int n = 8001;
    const double h = (hi - lo) / (n - 1);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = lo + i * h;
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * std::exp(s * u) * delta_resolvent_form(phi, eta, std::exp(u));
    }
    acc *= h * std::sin(s * M_PI) / M_PI;
    CHECK(acc == doctest::Approx(overlap_F(phi, eta, s)).epsilon(1e-5));
}

TEST_CASE("integrand bounds") {
    Algebra a({3});
    CounterRng rng(139);
    NormalFunctional eta = random_functional(rng, a);
    NormalFunctional phi = random_functional(rng, a);
    std::vector<double> grid;
    for (int i = -12; i <= 12; ++i) grid.push_back(std::pow(10.0, i / 2.0));

    // phi_n = phi: integrand identically zero
    IntegrandBoundsReport same = integrand_bounds_check(eta, phi, phi, 0.3, grid);
    CHECK(same.all_ok);
    for (const IntegrandBoundsRow& row : same.rows) CHECK(row.f_abs <= 1e-12);

    // seeded sequence phi_n = phi + chi/n
    NormalFunctional chi = random_functional(rng, a);
    for (int n : {1, 4, 16, 64}) {
        NormalFunctional phi_n = phi + (1.0 / n) * chi;
        IntegrandBoundsReport rep = integrand_bounds_check(eta, phi_n, phi, 0.55, grid);
        CHECK(rep.all_ok);
    }

    // large-lambda tail: the lambda^{s-2} bound dominates
    const IntegrandBoundsRow& tail = same.rows.back();
    CHECK(tail.bound_tail <= tail.bound_mass);
}

}  // TEST_SUITE
