#include "relmod/hypothesis_testing.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

namespace relmod {

namespace {

constexpr double kGoldenInv = 0.6180339887498949;

double q_of(const NormalFunctional& rho, const NormalFunctional& sigma, double s,
            const TolerancePolicy& tol) {
    return overlap_F(rho, sigma, s, tol);
}

}  // namespace

TestingInstance::TestingInstance(NormalFunctional r, NormalFunctional s, double p)
    : rho(std::move(r)), sigma(std::move(s)), prior_p(p) {
    if (!(rho.algebra == sigma.algebra))
        throw InputError("TestingInstance: algebra mismatch");
    if (std::abs(rho.total() - 1.0) > 1e-10 || std::abs(sigma.total() - 1.0) > 1e-10)
        throw InputError("TestingInstance: states must have unit mass");
    if (!(prior_p > 0.0 && prior_p < 1.0))
        throw InputError("TestingInstance: prior must lie in (0,1)");
}

double chernoff_q(const NormalFunctional& rho, const NormalFunctional& sigma, double s,
                  const TolerancePolicy& tol) {
    return q_of(rho, sigma, s, tol);
}

ChernoffResult minimize_q(const NormalFunctional& rho, const NormalFunctional& sigma,
                          const TolerancePolicy& tol) {
    constexpr int kGridPoints = 101;
    int best = 0;
    double best_q = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
        const double s = static_cast<double>(i) / (kGridPoints - 1);
        const double q = q_of(rho, sigma, s, tol);
        if (q < best_q) {
            best_q = q;
            best = i;
        }
    }
    double lo = std::max(0.0, (best - 1) / static_cast<double>(kGridPoints - 1));
    double hi = std::min(1.0, (best + 1) / static_cast<double>(kGridPoints - 1));

    double x1 = hi - kGoldenInv * (hi - lo);
    double x2 = lo + kGoldenInv * (hi - lo);
    double f1 = q_of(rho, sigma, x1, tol);
    double f2 = q_of(rho, sigma, x2, tol);
    while (hi - lo > 1e-8) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGoldenInv * (hi - lo);
            f1 = q_of(rho, sigma, x1, tol);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGoldenInv * (hi - lo);
            f2 = q_of(rho, sigma, x2, tol);
        }
    }
    const double s_star = 0.5 * (lo + hi);
    const double q_star = std::min({best_q, f1, f2, q_of(rho, sigma, s_star, tol)});
    ChernoffResult out{s_star, q_star, q_star >= 1e-300, 0.0};
    if (out.exponent_finite) out.exponent = -std::log(q_star);
    return out;
}

Matrix embed_dense(const NormalFunctional& f) {
    const int d = f.algebra.total_dim();
    Matrix m = Matrix::Zero(d, d);
    int offset = 0;
    for (int k = 0; k < f.algebra.num_blocks(); ++k) {
        const int n = f.algebra.blocks[k];
        m.block(offset, offset, n, n) = f.densities[k];
        offset += n;
    }
    return m;
}

Matrix kron_power(const Matrix& m, int n) {
    if (n < 1) throw InputError("kron_power: n must be positive");
    Matrix out = m;
    for (int i = 1; i < n; ++i) out = Eigen::kroneckerProduct(out, m).eval();
    return out;
}

double bayes_error(const TestingInstance& instance, int n, int dim_cap,
                   const TolerancePolicy& tol) {
    if (n < 1) throw InputError("bayes_error: n must be at least 1");
    const int d = instance.rho.algebra.total_dim();
    double total_dim = 1.0;
    for (int i = 0; i < n; ++i) total_dim *= d;
    if (total_dim > dim_cap) throw DomainError("bayes_error: tensor power exceeds dimension cap");
    (void)tol;

    Matrix a = instance.prior_p * kron_power(embed_dense(instance.rho), n);
    Matrix b = (1.0 - instance.prior_p) * kron_power(embed_dense(instance.sigma), n);
    const double mass = a.trace().real() + b.trace().real();
    return 0.5 * (mass - trace_norm(a - b));
}

std::vector<ConvergenceRow> exponent_convergence(const TestingInstance& instance, int n_max,
                                                 int dim_cap, const TolerancePolicy& tol) {
    ChernoffResult chern = minimize_q(instance.rho, instance.sigma, tol);
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const double pe = bayes_error(instance, n, dim_cap, tol);
        ConvergenceRow row;
        row.n = n;
        row.p_error = pe;
        row.rate_finite = pe > 0.0;
        row.rate = row.rate_finite ? -std::log(pe) / n : 0.0;
        row.bound_finite = chern.exponent_finite;
        row.bound_exponent = chern.exponent_finite ? chern.exponent : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace relmod
