#pragma once

#include "relmod/standard_form.hpp"

namespace relmod {

/// Binary hypothesis testing instance: two states and a prior.
struct TestingInstance {
    NormalFunctional rho;
    NormalFunctional sigma;
    double prior_p;

    TestingInstance(NormalFunctional r, NormalFunctional s, double p);
};

/// Result of minimizing Q(s) = Tr(rho^s sigma^{1-s}) over [0,1]. The exponent
/// carries an explicit finiteness tag; serialized output never holds a float
/// infinity.
struct ChernoffResult {
    double s_star;
    double q_star;
    bool exponent_finite;
    double exponent;  // -log q_star when finite
};

/// Q(s); equals the overlap functional of the two states.
double chernoff_q(const NormalFunctional& rho, const NormalFunctional& sigma, double s,
                  const TolerancePolicy& tol = {});

/// Coarse 101-point grid followed by golden-section refinement to width 1e-8.
/// Q is log-convex, so the local refinement is global.
ChernoffResult minimize_q(const NormalFunctional& rho, const NormalFunctional& sigma,
                          const TolerancePolicy& tol = {});

/// Minimal Bayes error for n copies:
/// (1/2)(A(1) + B(1) - |A - B|(1)) with A = p rho^(x)n, B = (1-p) sigma^(x)n.
/// Tensor powers are materialized densely; total dimension is capped.
double bayes_error(const TestingInstance& instance, int n, int dim_cap = 1024,
                   const TolerancePolicy& tol = {});

struct ConvergenceRow {
    int n;
    double p_error;
    bool rate_finite;
    double rate;             // -(1/n) log P_e(n) when finite
    double bound_exponent;   // Chernoff exponent (0 when infinite tagged separately)
    bool bound_finite;
};

std::vector<ConvergenceRow> exponent_convergence(const TestingInstance& instance, int n_max,
                                                 int dim_cap = 1024,
                                                 const TolerancePolicy& tol = {});

/// Dense block-diagonal embedding of a functional's densities (helper shared
/// with tests and the CLI).
Matrix embed_dense(const NormalFunctional& f);

Matrix kron_power(const Matrix& m, int n);

}  // namespace relmod
