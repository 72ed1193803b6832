#include "relmod/numerics.hpp"

#include <cmath>

namespace relmod {

namespace {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

// Shared worker: clip roundoff negatives, error on material ones, apply the
// scalar rule lambda^z above the relative support cut.
Matrix power_impl(const Matrix& h, Complex z, const TolerancePolicy& tol) {
    tol.validate();
    SpectralDecomposition sd = eigh(h);
    const int n = static_cast<int>(sd.eigenvalues.size());
    const double scale = std::max(std::abs(sd.eigenvalues(0)),
                                  std::abs(sd.eigenvalues(n - 1)));
    if (sd.eigenvalues(0) < -tol.psd_slack * std::max(scale, 1e-300))
        throw NotPSDError("pseudo_power: matrix has a materially negative eigenvalue");

    RealVector lam = sd.eigenvalues.cwiseMax(0.0);
    const double lam_max = lam(n - 1);
    const double cut = tol.support_cut * lam_max;

    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i) {
        if (lam(i) <= cut) {
            f(i) = 0.0;
        } else if (z == Complex(0.0, 0.0)) {
            f(i) = 1.0;
        } else if (z.imag() == 0.0) {
            f(i) = std::pow(lam(i), z.real());
        } else {
            f(i) = std::exp(z * std::log(lam(i)));
        }
    }
    Matrix out = sd.eigenvectors * f.asDiagonal() * sd.eigenvectors.adjoint();
    if (z.imag() == 0.0) out = hermitize(out);
    return out;
}

}  // namespace

Matrix hermitize(const Matrix& h) {
    return 0.5 * (h + h.adjoint());
}

SpectralDecomposition eigh(const Matrix& h) {
    if (h.rows() != h.cols()) throw InputError("eigh: matrix is not square");
    if (!all_finite(h)) throw InputError("eigh: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(h));
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eigh: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Complex trace(const Matrix& m) {
    return m.trace();
}

double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.jacobiSvd().singularValues()(0);
}

double trace_norm(const Matrix& h) {
    return eigh(h).eigenvalues.cwiseAbs().sum();
}

Matrix abs_val(const Matrix& h) {
    SpectralDecomposition sd = eigh(h);
    return hermitize(sd.eigenvectors *
                     sd.eigenvalues.cwiseAbs().cast<Complex>().asDiagonal() *
                     sd.eigenvectors.adjoint());
}

std::pair<Matrix, Matrix> jordan_parts(const Matrix& h) {
    SpectralDecomposition sd = eigh(h);
    RealVector pos = sd.eigenvalues.cwiseMax(0.0);
    RealVector neg = (-sd.eigenvalues).cwiseMax(0.0);
    Matrix p = hermitize(sd.eigenvectors * pos.cast<Complex>().asDiagonal() *
                         sd.eigenvectors.adjoint());
    Matrix n = hermitize(sd.eigenvectors * neg.cast<Complex>().asDiagonal() *
                         sd.eigenvectors.adjoint());
    return {p, n};
}

Matrix pseudo_power(const Matrix& h, Complex z, const TolerancePolicy& tol) {
    if (z.real() < 0.0 || z.real() > 1.0)
        throw InputError("pseudo_power: Re z must lie in [0,1]");
    return power_impl(h, z, tol);
}

Matrix support_power(const Matrix& h, Complex z, const TolerancePolicy& tol) {
    return power_impl(h, z, tol);
}

Matrix support_proj(const Matrix& h, const TolerancePolicy& tol) {
    return power_impl(h, Complex(0.0, 0.0), tol);
}

bool is_projection(const Matrix& p, double slack) {
    if (p.rows() != p.cols()) return false;
    const double scale = std::max(1.0, op_norm(p));
    if (op_norm(p - p.adjoint()) > slack * scale) return false;
    return op_norm(p * p - p) <= slack * scale;
}

Matrix projection_join(const Matrix& p, const Matrix& q, const TolerancePolicy& tol) {
    if (!is_projection(p) || !is_projection(q))
        throw InputError("projection_join: inputs must be projections");
    return support_proj(hermitize(p + q), tol);
}

}  // namespace relmod
