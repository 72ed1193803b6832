#pragma once

#include <utility>

#include "relmod/core.hpp"

namespace relmod {

/// Eigensystem of a Hermitian matrix, eigenvalues ascending, eigenvectors as columns.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
               eigenvectors.adjoint();
    }
};

/// (H + H*)/2. Every Hermitian argument in this library is symmetrized on entry.
Matrix hermitize(const Matrix& h);

/// Throws InputError on non-finite entries; otherwise deterministic for equal input.
SpectralDecomposition eigh(const Matrix& h);

Complex trace(const Matrix& m);

/// Largest singular value.
double op_norm(const Matrix& m);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const Matrix& h);

/// Spectral absolute value of a Hermitian matrix.
Matrix abs_val(const Matrix& h);

/// Spectral positive/negative parts: h = first - second, both PSD, product zero.
std::pair<Matrix, Matrix> jordan_parts(const Matrix& h);

/// lambda -> lambda^z on the support of a PSD matrix, zero on the kernel.
/// z = 0 yields the support projection. Real exponents give a Hermitian result.
/// Requires Re z in [0,1]; support_power below drops that restriction.
Matrix pseudo_power(const Matrix& h, Complex z, const TolerancePolicy& tol = {});

/// Same scalar rule as pseudo_power with arbitrary exponent (negative real parts
/// act as pseudo-inverse powers on the support).
Matrix support_power(const Matrix& h, Complex z, const TolerancePolicy& tol = {});

/// Orthogonal projection onto the range of a PSD matrix.
Matrix support_proj(const Matrix& h, const TolerancePolicy& tol = {});

bool is_projection(const Matrix& p, double slack = 1e-8);

/// Smallest projection dominating both p and q.
Matrix projection_join(const Matrix& p, const Matrix& q, const TolerancePolicy& tol = {});

}  // namespace relmod
