#include "relmod/inequalities.hpp"

#include <cmath>

namespace relmod {

namespace {

VerificationReport make_report(std::string name, double lhs, double rhs, double scale,
                               const TolerancePolicy& tol) {
    VerificationReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = rhs - lhs;
    r.scale = scale;
    r.pass = r.gap >= -tol.ineq_slack * scale;
    return r;
}

double density_scale(const NormalFunctional& f) {
    double s = 0.0;
    for (const Matrix& d : f.densities) s = std::max(s, op_norm(d));
    return s;
}

}  // namespace

double report_scale(const NormalFunctional& eta, const NormalFunctional& phi) {
    return std::max({eta.total(), phi.total(), 1.0});
}

VerificationReport verify_main(const NormalFunctional& eta, const NormalFunctional& phi,
                               double s, const TolerancePolicy& tol) {
    if (!(eta.algebra == phi.algebra)) throw InputError("verify_main: algebra mismatch");
    JordanDecomposition jd = jordan(eta - phi, tol);
    const double lhs = eta.total() - jd.plus.total();
    const double rhs = overlap_F(eta, phi, s, tol);
    VerificationReport r = make_report("main", lhs, rhs, report_scale(eta, phi), tol);
    r.details["s"] = s;
    return r;
}

VerificationReport verify_corollary(const NormalFunctional& eta, const NormalFunctional& phi,
                                    double s, const TolerancePolicy& tol) {
    if (!(eta.algebra == phi.algebra)) throw InputError("verify_corollary: algebra mismatch");
    const double overlap = overlap_F(eta, phi, s, tol);
    const double lhs = phi.total() + eta.total() - abs_functional(phi - eta, tol).total();
    const double rhs = 2.0 * overlap;
    const double scale = report_scale(eta, phi);
    VerificationReport r = make_report("corollary", lhs, rhs, scale, tol);
    const double swapped = overlap_F(phi, eta, 1.0 - s, tol);
    const double swap_residual = std::abs(swapped - overlap);
    r.details["s"] = s;
    r.details["swap_residual"] = swap_residual;
    r.pass = r.pass && swap_residual <= tol.ineq_slack * scale;
    return r;
}

VerificationReport verify_diff_monotonicity(const NormalFunctional& phi1,
                                            const NormalFunctional& phi2,
                                            const NormalFunctional& eta,
                                            const NormalFunctional& psi, double s,
                                            const TolerancePolicy& tol) {
    if (!leq(phi1, phi2, tol) || !leq(eta, psi, tol))
        throw PreconditionError("verify_diff_monotonicity: ordering hypotheses violated");
    const double lhs = overlap_F(phi2, eta, s, tol) - overlap_F(phi1, eta, s, tol);
    const double rhs = overlap_F(phi2, psi, s, tol) - overlap_F(phi1, psi, s, tol);
    const double scale = std::max({phi2.total(), psi.total(), 1.0});
    VerificationReport r = make_report("diff_monotonicity", lhs, rhs, scale, tol);
    r.details["s"] = s;
    return r;
}

EquivalenceReport verify_lemma_ec(const NormalFunctional& eta, const NormalFunctional& phi,
                                  double s, const TolerancePolicy& tol) {
    if (!leq(phi, eta, tol))
        throw PreconditionError("verify_lemma_ec: requires phi <= eta");
    const double overlap = overlap_F(eta, phi, s, tol);
    const double scale = report_scale(eta, phi);
    const double residual = std::abs(overlap - phi.total());
    const bool equality = residual <= tol.ineq_slack * scale;

    JordanDecomposition jd = jordan(eta - phi, tol);
    // phi <= eta makes the difference positive; its support against phi is the
    // whole story.
    const bool orth = orthogonal(jd.plus, phi, tol);

    EquivalenceReport out{VerificationReport{}, equality, orth, equality == orth};
    out.report = make_report("lemma_ec", residual, tol.ineq_slack * scale, scale, tol);
    out.report.pass = out.equivalence;
    out.report.details["s"] = s;
    out.report.details["equality"] = equality ? 1.0 : 0.0;
    out.report.details["orthogonality"] = orth ? 1.0 : 0.0;
    return out;
}

EqualityCertificate certify_equality(const NormalFunctional& eta,
                                     const NormalFunctional& phi,
                                     const TolerancePolicy& tol) {
    if (!(eta.algebra == phi.algebra)) throw InputError("certify_equality: algebra mismatch");
    JordanDecomposition jd = jordan(eta - phi, tol);
    const double scale = std::max({density_scale(eta), density_scale(phi), 1e-300});

    // Supports of the Jordan parts are cut relative to the *input* scale, not
    // the parts' own norms: when one part is pure roundoff its eigenvalues
    // must count as zero, or its "support" would be noise directions.
    double r_plus = 0.0, r_minus = 0.0;
    for (int k = 0; k < eta.algebra.num_blocks(); ++k) {
        SpectralDecomposition diff = eigh(eta.densities[k] - phi.densities[k]);
        const int n = static_cast<int>(diff.eigenvalues.size());
        Matrix s_plus = Matrix::Zero(n, n), s_minus = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            const Matrix rank1 =
                diff.eigenvectors.col(i) * diff.eigenvectors.col(i).adjoint();
            if (diff.eigenvalues(i) > tol.support_cut * scale) s_plus += rank1;
            if (diff.eigenvalues(i) < -tol.support_cut * scale) s_minus += rank1;
        }
        r_plus = std::max(r_plus, op_norm(s_plus * phi.densities[k]));
        r_minus = std::max(r_minus, op_norm(s_minus * eta.densities[k]));
    }

    // psi = eta - (eta-phi)_+ = phi - (eta-phi)_-; PSD only in the equality case.
    HermitianFunctional psi_h = eta - HermitianFunctional(jd.plus.algebra, jd.plus.densities);
    double psi_min = 0.0;
    for (const Matrix& d : psi_h.densities)
        psi_min = std::min(psi_min, eigh(d).eigenvalues(0));

    const double cert_tol = tol.ineq_slack * scale;
    const bool verdict = r_plus <= cert_tol && r_minus <= cert_tol && psi_min >= -cert_tol;

    std::vector<Matrix> psi_densities;
    psi_densities.reserve(psi_h.densities.size());
    for (const Matrix& d : psi_h.densities)
        psi_densities.push_back(jordan_parts(d).first);  // clip roundoff negatives
    return {r_plus, r_minus,
            NormalFunctional(eta.algebra, std::move(psi_densities), tol), verdict};
}

std::pair<NormalFunctional, NormalFunctional> construct_equality_instance(
    const Algebra& algebra, int rank_plus, int rank_minus, int rank_common,
    std::uint64_t seed, const TolerancePolicy& tol) {
    if (rank_plus < 0 || rank_minus < 0 || rank_common < 0)
        throw InputError("construct_equality_instance: negative rank");
    if (rank_plus + rank_minus + rank_common > algebra.total_dim())
        throw InputError("construct_equality_instance: ranks exceed total dimension");

    CounterRng rng(seed);
    std::vector<Matrix> d_eta, d_phi;
    int need_p = rank_plus, need_m = rank_minus, need_c = rank_common;
    for (int n : algebra.blocks) {
        Matrix u = random_unitary(rng, n);
        Matrix p = Matrix::Zero(n, n), m = Matrix::Zero(n, n), c = Matrix::Zero(n, n);
        int col = 0;
        auto take = [&](int& need, Matrix& target) {
            while (need > 0 && col < n) {
                const double w = 0.5 + rng.next_double();
                target += w * u.col(col) * u.col(col).adjoint();
                ++col;
                --need;
            }
        };
        take(need_p, p);
        take(need_m, m);
        take(need_c, c);
        d_eta.push_back(hermitize(p + c));
        d_phi.push_back(hermitize(m + c));
    }
    return {NormalFunctional(algebra, std::move(d_eta), tol),
            NormalFunctional(algebra, std::move(d_phi), tol)};
}

VerificationReport verify_continuity(const NormalFunctional& phi, const NormalFunctional& chi,
                                     const NormalFunctional& eta, double s, int n_max,
                                     const TolerancePolicy& tol) {
    if (n_max < 2) throw InputError("verify_continuity: n_max must be at least 2");
    constexpr double kContinuityTol = 1e-5;
    const double limit = overlap_F(phi, eta, s, tol);
    const double scale = std::max({phi.total(), chi.total(), eta.total(), 1.0});

    std::vector<double> d(n_max);
    for (int n = 1; n <= n_max; ++n) {
        NormalFunctional phi_n = phi + (1.0 / n) * chi;
        d[n - 1] = std::abs(overlap_F(phi_n, eta, s, tol) - limit);
    }
    // Eventually decreasing: the last half must be nonincreasing up to roundoff.
    bool tail_decreasing = true;
    for (int n = n_max / 2; n < n_max - 1; ++n)
        if (d[n + 1] > d[n] + 1e-14 * scale) tail_decreasing = false;

    VerificationReport r;
    r.name = "continuity";
    r.lhs = d[n_max - 1];
    r.rhs = kContinuityTol * scale;
    r.gap = r.rhs - r.lhs;
    r.scale = scale;
    r.pass = d[n_max - 1] <= kContinuityTol * scale && tail_decreasing;
    r.details["s"] = s;
    r.details["d_1"] = d[0];
    r.details["d_nmax"] = d[n_max - 1];
    r.details["tail_decreasing"] = tail_decreasing ? 1.0 : 0.0;
    return r;
}

ChainGaps chain_gaps(const NormalFunctional& eta, const NormalFunctional& phi, double s,
                     const TolerancePolicy& tol) {
    JordanDecomposition jd = jordan(eta - phi, tol);
    NormalFunctional top = phi + jd.plus;  // dominates both eta and phi
    ChainGaps g;
    g.gap1 = overlap_F(top, phi, s, tol) - phi.total();
    const double term_phi = overlap_F(top, phi, s, tol) - overlap_F(eta, phi, s, tol);
    const double term_top = top.total() - overlap_F(eta, top, s, tol);
    g.gap2 = term_top - term_phi;
    g.gap3 = overlap_F(top, eta, 1.0 - s, tol) - eta.total();
    return g;
}

}  // namespace relmod
