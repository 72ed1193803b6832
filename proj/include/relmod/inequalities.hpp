#pragma once

#include <map>
#include <string>

#include "relmod/rng.hpp"
#include "relmod/standard_form.hpp"

namespace relmod {

/// Outcome of one inequality check. gap = rhs - lhs for a <=-claim; pass means
/// gap >= -ineq_slack * scale.
struct VerificationReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double scale = 1.0;
    bool pass = false;
    std::map<std::string, double> details;
};

/// Structural witness for the equality case: both support residuals must
/// vanish, and the common part psi reconstructs eta and phi.
struct EqualityCertificate {
    double plus_orth_phi;   // || s((eta-phi)_+) D_phi ||_op residual
    double minus_orth_eta;  // || s((eta-phi)_-) D_eta ||_op residual
    NormalFunctional psi;   // eta - (eta-phi)_+ (clipped to PSD when certified)
    bool verdict;
};

double report_scale(const NormalFunctional& eta, const NormalFunctional& phi);

/// eta(1) - (eta-phi)_+(1)  <=  F_s(eta, phi).
VerificationReport verify_main(const NormalFunctional& eta, const NormalFunctional& phi,
                               double s, const TolerancePolicy& tol = {});

/// 2 F_s(eta, phi) >= phi(1) + eta(1) - |phi - eta|(1); also records the swap
/// identity F_{1-s}(phi, eta) = F_s(eta, phi).
VerificationReport verify_corollary(const NormalFunctional& eta, const NormalFunctional& phi,
                                    double s, const TolerancePolicy& tol = {});

/// For phi1 <= phi2 and eta <= psi:
/// F_s(phi2, eta) - F_s(phi1, eta) <= F_s(phi2, psi) - F_s(phi1, psi).
VerificationReport verify_diff_monotonicity(const NormalFunctional& phi1,
                                            const NormalFunctional& phi2,
                                            const NormalFunctional& eta,
                                            const NormalFunctional& psi, double s,
                                            const TolerancePolicy& tol = {});

struct EquivalenceReport {
    VerificationReport report;
    bool equality_holds;
    bool orthogonality_holds;
    bool equivalence;  // the two verdicts agree
};

/// For phi <= eta: F_s(eta, phi) = phi(1) iff eta - phi is orthogonal to phi.
EquivalenceReport verify_lemma_ec(const NormalFunctional& eta, const NormalFunctional& phi,
                                  double s, const TolerancePolicy& tol = {});

EqualityCertificate certify_equality(const NormalFunctional& eta,
                                     const NormalFunctional& phi,
                                     const TolerancePolicy& tol = {});

/// Builds (eta, phi) achieving equality: eta = P + psi, phi = N + psi with P,
/// N, psi random PSD on mutually orthogonal subspaces of the given ranks.
std::pair<NormalFunctional, NormalFunctional> construct_equality_instance(
    const Algebra& algebra, int rank_plus, int rank_minus, int rank_common,
    std::uint64_t seed, const TolerancePolicy& tol = {});

/// Convergence of F_s under phi_n = phi + chi / n: reports d_n and passes when
/// d_{n_max} is below threshold and the tail of d is nonincreasing.
VerificationReport verify_continuity(const NormalFunctional& phi, const NormalFunctional& chi,
                                     const NormalFunctional& eta, double s, int n_max,
                                     const TolerancePolicy& tol = {});

/// The three intermediate gaps of the chained derivation, each >= 0:
///   1. F_s(phi + P, phi) >= phi(1)                      (P = (eta-phi)_+)
///   2. F_s(phi+P, phi) - F_s(eta, phi) <= (phi+P)(1) - F_s(eta, phi+P)
///   3. F_{1-s}(phi + P, eta) >= eta(1)
struct ChainGaps {
    double gap1;
    double gap2;
    double gap3;
};

ChainGaps chain_gaps(const NormalFunctional& eta, const NormalFunctional& phi, double s,
                     const TolerancePolicy& tol = {});

}  // namespace relmod
