#pragma once

#include "relmod/algebra.hpp"

namespace relmod {

/// Element of the Hilbert-Schmidt standard-form space, one matrix per block.
struct StandardVector {
    Algebra algebra;
    std::vector<Matrix> blocks;

    StandardVector(Algebra a, std::vector<Matrix> b);

    double norm() const;
};

Complex inner(const StandardVector& x, const StandardVector& y);
StandardVector operator+(const StandardVector& x, const StandardVector& y);
StandardVector operator-(const StandardVector& x, const StandardVector& y);
StandardVector operator*(Complex c, const StandardVector& x);

/// The positive-cone representative of f: blockwise D^{1/2}.
StandardVector xi_of(const NormalFunctional& f, const TolerancePolicy& tol = {});

/// Modular conjugation: blockwise adjoint. Antilinear involution.
StandardVector apply_J(const StandardVector& xi);

/// Left action of a block operator on a standard vector.
StandardVector act_left(const BlockOperator& x, const StandardVector& xi);

/// Right multiplication by a projection, i.e. the commutant-side support j(e).
StandardVector act_right(const StandardVector& xi, const BlockOperator& e);

/// Relative modular operator of a pair of functionals, kept in spectral form.
/// Powers act as xi -> D_phi^z xi D_psi^{-z} with pseudo-powers on supports;
/// they are never materialized as dim^2 x dim^2 matrices.
class RelativeModularOperator {
  public:
    RelativeModularOperator(NormalFunctional phi, NormalFunctional psi,
                            TolerancePolicy tol = {});

    const NormalFunctional& phi() const { return phi_; }
    const NormalFunctional& psi() const { return psi_; }

    /// Delta^z applied to xi; Re z in [-1, 1]. z = 0 is the two-sided support
    /// compression s(phi) xi s(psi).
    StandardVector apply_power(Complex z, const StandardVector& xi) const;

  private:
    NormalFunctional phi_;
    NormalFunctional psi_;
    TolerancePolicy tol_;
    std::vector<SpectralDecomposition> phi_spec_;
    std::vector<SpectralDecomposition> psi_spec_;
};

/// ||Delta_{eta,phi}^{s/2} xi_phi||^2 via the trace closed form
/// sum_k Tr(D_eta^s D_phi^{1-s}) with the support convention at s in {0,1}.
double overlap_F(const NormalFunctional& eta, const NormalFunctional& phi, double s,
                 const TolerancePolicy& tol = {});

/// Same quantity through the modular-operator route (apply, then squared norm).
double overlap_F_superop(const NormalFunctional& eta, const NormalFunctional& phi,
                         double s, const TolerancePolicy& tol = {});

/// Radon-Nikodym cocycle data for a pair with supp(phi) contained in supp(psi).
struct ConnesCocycle {
    NormalFunctional phi;
    NormalFunctional psi;
    /// Largest lambda with lambda*phi <= psi (0 if the support condition fails,
    /// +inf for phi = 0).
    double lambda_star;
};

ConnesCocycle make_cocycle(const NormalFunctional& phi, const NormalFunctional& psi,
                           const TolerancePolicy& tol = {});

/// The analytically continued cocycle value D_phi^s D_psi^{-s} (pseudo-inverse
/// powers). Throws DomainError when supp(phi) is not contained in supp(psi).
BlockOperator cocycle_at(const ConnesCocycle& c, double s, const TolerancePolicy& tol = {});

double block_op_norm(const BlockOperator& x);

/// S_{phi,psi} applied to the core vector x xi_psi + (1 - j(s(psi))) zeta,
/// evaluated by its defining formula s(psi) x* xi_phi.
StandardVector s_operator_apply(const NormalFunctional& phi, const NormalFunctional& psi,
                                const BlockOperator& x, const StandardVector& zeta,
                                const TolerancePolicy& tol = {});

}  // namespace relmod
