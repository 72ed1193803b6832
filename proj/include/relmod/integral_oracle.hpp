#pragma once

#include "relmod/algebra.hpp"

namespace relmod {

/// Controls for the resolvent quadrature. The substitution lambda = e^u is
/// fixed; panels are trapezoid nodes in u, doubled until the target is met.
struct QuadratureConfig {
    double target_rel_error = 1e-8;
    int max_nodes = 1 << 18;
    int initial_nodes = 129;

    void validate() const {
        if (!(target_rel_error > 0.0) || initial_nodes < 3 || max_nodes < initial_nodes)
            throw InputError("QuadratureConfig: invalid settings");
    }
};

template <typename T>
struct OracleResult {
    T value;
    double est_error = 0.0;
    bool conditioning_warning = false;
    int nodes_used = 0;
};

/// H^s for PSD H through sin(s pi)/pi * integral of lambda^{s-1} H (H + lambda)^{-1},
/// evaluated with LDLT resolvent solves only. Independent of the spectral-calculus
/// power path except for placing the truncation window. s must lie in [0.02, 0.98].
OracleResult<Matrix> frac_power_integral(const Matrix& h, double s,
                                         const QuadratureConfig& cfg = {},
                                         const TolerancePolicy& tol = {});

/// Tr(D_eta^s D_phi^{1-s}) with both powers taken through the integral route.
OracleResult<double> overlap_integral(const NormalFunctional& eta,
                                      const NormalFunctional& phi, double s,
                                      const QuadratureConfig& cfg = {},
                                      const TolerancePolicy& tol = {});

/// Quadratic form (Delta_{phi,eta} (Delta_{phi,eta} + lambda)^{-1} xi_eta, xi_eta),
/// the building block of the dominated-convergence integrand.
double delta_resolvent_form(const NormalFunctional& phi, const NormalFunctional& eta,
                            double lambda, const TolerancePolicy& tol = {});

struct IntegrandBoundsRow {
    double lambda;
    double f_abs;      // |f_n(lambda)|
    double bound_mass; // lambda^{s-1} eta(1)
    double bound_tail; // lambda^{s-2} (phi(1) + phi_n(1))
    bool ok;
};

struct IntegrandBoundsReport {
    std::vector<IntegrandBoundsRow> rows;
    bool all_ok;
};

/// Pointwise check of the two integrable dominating bounds on the lambda grid.
IntegrandBoundsReport integrand_bounds_check(const NormalFunctional& eta,
                                             const NormalFunctional& phi_n,
                                             const NormalFunctional& phi, double s,
                                             const std::vector<double>& lambda_grid,
                                             const TolerancePolicy& tol = {});

}  // namespace relmod
