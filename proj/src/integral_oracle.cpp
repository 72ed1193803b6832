#include "relmod/integral_oracle.hpp"

#include <cmath>

namespace relmod {

namespace {

struct Window {
    double lo;
    double hi;
};

// Truncation of the u-integral. The integrand decays like e^{su} to the left
// and e^{(s-1)u} to the right, so the margins have to grow as s approaches an
// endpoint for the tails to drop below the target.
Window trunc_window(double lam_min, double lam_max, double s) {
    const double margin_lo = std::max(40.0, 26.0 / s);
    const double margin_hi = std::max(40.0, 26.0 / (1.0 - s));
    return {std::log(lam_min) - margin_lo, std::log(lam_max) + margin_hi};
}

// Trapezoid value of \int e^{su} H (H + e^u)^{-1} du over [w.lo, w.hi] with n nodes.
Matrix trapezoid(const Matrix& h, double s, const Window& w, int n) {
    const int dim = static_cast<int>(h.rows());
    const double step = (w.hi - w.lo) / (n - 1);
    Matrix acc = Matrix::Zero(dim, dim);
    const Matrix id = Matrix::Identity(dim, dim);
    for (int i = 0; i < n; ++i) {
        const double u = w.lo + i * step;
        const double lam = std::exp(u);
        Eigen::LDLT<Matrix> solver(h + lam * id);
        Matrix term = std::exp(s * u) * solver.solve(h);
        if (i == 0 || i == n - 1) term *= 0.5;
        acc += term;
    }
    return step * acc;
}

}  // namespace

OracleResult<Matrix> frac_power_integral(const Matrix& h, double s,
                                         const QuadratureConfig& cfg,
                                         const TolerancePolicy& tol) {
    cfg.validate();
    tol.validate();
    if (!(s >= 0.02 && s <= 0.98))
        throw InputError("frac_power_integral: s outside [0.02, 0.98]");
    if (!h.allFinite()) throw InputError("frac_power_integral: non-finite entries");

    // The spectrum is used only to place the truncation window and to flag
    // conditioning; all values come from the resolvent solves.
    SpectralDecomposition sd = eigh(h);
    const int dim = static_cast<int>(sd.eigenvalues.size());
    const double lam_max = sd.eigenvalues(dim - 1);
    const double scale = std::max(std::abs(sd.eigenvalues(0)), std::abs(lam_max));
    if (sd.eigenvalues(0) < -tol.psd_slack * std::max(scale, 1e-300))
        throw NotPSDError("frac_power_integral: matrix is not PSD");
    if (lam_max <= 0.0)
        return {Matrix::Zero(dim, dim), 0.0, false, 0};

    double lam_min = lam_max;
    const double cut = tol.support_cut * lam_max;
    for (int i = 0; i < dim; ++i)
        if (sd.eigenvalues(i) > cut) {
            lam_min = sd.eigenvalues(i);
            break;
        }
    OracleResult<Matrix> out{Matrix::Zero(dim, dim), 0.0, lam_max / lam_min > 1e8, 0};

    const Window w = trunc_window(lam_min, lam_max, s);
    const double prefactor = std::sin(s * M_PI) / M_PI;
    Matrix prev = prefactor * trapezoid(h, s, w, cfg.initial_nodes);
    int n = cfg.initial_nodes;
    while (true) {
        const int n2 = 2 * n - 1;  // refinement keeps previous nodes
        if (n2 > cfg.max_nodes)
            throw ConvergenceError("frac_power_integral: node budget exhausted");
        Matrix next = prefactor * trapezoid(h, s, w, n2);
        const double diff = op_norm(next - prev);
        const double norm_scale = std::max(op_norm(next), 1e-300);
        n = n2;
        if (diff <= cfg.target_rel_error * norm_scale) {
            out.value = hermitize(next);
            out.est_error = diff;
            out.nodes_used = n;
            return out;
        }
        prev = std::move(next);
    }
}

OracleResult<double> overlap_integral(const NormalFunctional& eta,
                                      const NormalFunctional& phi, double s,
                                      const QuadratureConfig& cfg,
                                      const TolerancePolicy& tol) {
    if (!(eta.algebra == phi.algebra)) throw InputError("overlap_integral: algebra mismatch");
    OracleResult<double> out{0.0, 0.0, false, 0};
    for (size_t k = 0; k < eta.densities.size(); ++k) {
        OracleResult<Matrix> a = frac_power_integral(eta.densities[k], s, cfg, tol);
        OracleResult<Matrix> b = frac_power_integral(phi.densities[k], 1.0 - s, cfg, tol);
        out.value += (a.value * b.value).trace().real();
        out.est_error += a.est_error * op_norm(b.value) + b.est_error * op_norm(a.value);
        out.conditioning_warning |= a.conditioning_warning || b.conditioning_warning;
        out.nodes_used = std::max({out.nodes_used, a.nodes_used, b.nodes_used});
    }
    return out;
}

double delta_resolvent_form(const NormalFunctional& phi, const NormalFunctional& eta,
                            double lambda, const TolerancePolicy& tol) {
    if (!(phi.algebra == eta.algebra))
        throw InputError("delta_resolvent_form: algebra mismatch");
    if (!(lambda > 0.0)) throw InputError("delta_resolvent_form: lambda must be positive");
    tol.validate();
    double v = 0.0;
    for (size_t k = 0; k < phi.densities.size(); ++k) {
        SpectralDecomposition sp = eigh(phi.densities[k]);
        SpectralDecomposition se = eigh(eta.densities[k]);
        const int n = static_cast<int>(sp.eigenvalues.size());
        const double cut_p = tol.support_cut * std::max(sp.eigenvalues(n - 1), 0.0);
        const double cut_e = tol.support_cut * std::max(se.eigenvalues(n - 1), 0.0);
        // Overlap of eigenvectors; Delta acts with eigenvalue a_i / b_j on
        // |u_i><v_j|, and xi_eta has weight sqrt(b_j) along |v_j><v_j|.
        Matrix overlap = sp.eigenvectors.adjoint() * se.eigenvectors;
        for (int j = 0; j < n; ++j) {
            const double b = se.eigenvalues(j);
            if (b <= cut_e || b <= 0.0) continue;
            for (int i = 0; i < n; ++i) {
                const double a = sp.eigenvalues(i);
                if (a <= cut_p || a <= 0.0) continue;
                const double mu = a / b;
                v += mu / (mu + lambda) * b * std::norm(overlap(i, j));
            }
        }
    }
    return v;
}

IntegrandBoundsReport integrand_bounds_check(const NormalFunctional& eta,
                                             const NormalFunctional& phi_n,
                                             const NormalFunctional& phi, double s,
                                             const std::vector<double>& lambda_grid,
                                             const TolerancePolicy& tol) {
    if (!(s > 0.0 && s < 1.0)) throw InputError("integrand_bounds_check: s outside (0,1)");
    constexpr double kAbsSlack = 1e-12;
    IntegrandBoundsReport report{{}, true};
    const double mass_eta = eta.total();
    const double mass_sum = phi.total() + phi_n.total();
    for (double lam : lambda_grid) {
        const double qn = delta_resolvent_form(phi_n, eta, lam, tol);
        const double q = delta_resolvent_form(phi, eta, lam, tol);
        IntegrandBoundsRow row;
        row.lambda = lam;
        row.f_abs = std::pow(lam, s - 1.0) * std::abs(qn - q);
        row.bound_mass = std::pow(lam, s - 1.0) * mass_eta;
        row.bound_tail = std::pow(lam, s - 2.0) * mass_sum;
        row.ok = row.f_abs <= row.bound_mass + kAbsSlack &&
                 row.f_abs <= row.bound_tail + kAbsSlack;
        report.all_ok &= row.ok;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace relmod
