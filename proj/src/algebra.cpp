#include "relmod/algebra.hpp"

#include <cmath>

namespace relmod {

namespace {

void check_shapes(const Algebra& a, const std::vector<Matrix>& mats, const char* who) {
    if (static_cast<int>(mats.size()) != a.num_blocks())
        throw InputError(std::string(who) + ": block count mismatch");
    for (int k = 0; k < a.num_blocks(); ++k)
        if (mats[k].rows() != a.blocks[k] || mats[k].cols() != a.blocks[k])
            throw InputError(std::string(who) + ": block shape mismatch");
}

double functional_scale(const HermitianFunctional& f, const HermitianFunctional& g) {
    double s = 1.0;
    for (const Matrix& d : f.densities) s = std::max(s, std::abs(trace(d).real()));
    for (const Matrix& d : g.densities) s = std::max(s, std::abs(trace(d).real()));
    return s;
}

}  // namespace

BlockOperator block_identity(const Algebra& a) {
    BlockOperator x;
    x.reserve(a.blocks.size());
    for (int n : a.blocks) x.push_back(Matrix::Identity(n, n));
    return x;
}

HermitianFunctional::HermitianFunctional(Algebra a, std::vector<Matrix> d)
    : algebra(std::move(a)), densities(std::move(d)) {
    check_shapes(algebra, densities, "HermitianFunctional");
    for (Matrix& m : densities) {
        if (!m.allFinite())
            throw InputError("HermitianFunctional: non-finite density entries");
        m = hermitize(m);
    }
}

double HermitianFunctional::total() const {
    double t = 0.0;
    for (const Matrix& d : densities) t += trace(d).real();
    return t;
}

NormalFunctional::NormalFunctional(Algebra a, std::vector<Matrix> d,
                                   const TolerancePolicy& tol)
    : HermitianFunctional(std::move(a), std::move(d)) {
    tol.validate();
    for (const Matrix& m : densities) {
        SpectralDecomposition sd = eigh(m);
        const int n = static_cast<int>(sd.eigenvalues.size());
        const double scale =
            std::max({std::abs(sd.eigenvalues(0)), std::abs(sd.eigenvalues(n - 1)), 1e-300});
        if (sd.eigenvalues(0) < -tol.psd_slack * scale)
            throw NotPSDError("NormalFunctional: density is not PSD");
    }
}

Complex evaluate(const HermitianFunctional& f, const BlockOperator& x) {
    check_shapes(f.algebra, x, "evaluate");
    Complex v = 0.0;
    for (int k = 0; k < f.algebra.num_blocks(); ++k)
        v += trace(f.densities[k] * x[k]);
    return v;
}

NormalFunctional operator+(const NormalFunctional& f, const NormalFunctional& g) {
    if (!(f.algebra == g.algebra)) throw InputError("functional sum: algebra mismatch");
    std::vector<Matrix> d;
    d.reserve(f.densities.size());
    for (size_t k = 0; k < f.densities.size(); ++k)
        d.push_back(f.densities[k] + g.densities[k]);
    return {f.algebra, std::move(d)};
}

NormalFunctional operator*(double c, const NormalFunctional& f) {
    if (c < 0.0) throw InputError("functional scaling: negative coefficient");
    std::vector<Matrix> d;
    d.reserve(f.densities.size());
    for (const Matrix& m : f.densities) d.push_back(c * m);
    return {f.algebra, std::move(d)};
}

HermitianFunctional operator-(const HermitianFunctional& f, const HermitianFunctional& g) {
    if (!(f.algebra == g.algebra)) throw InputError("functional difference: algebra mismatch");
    std::vector<Matrix> d;
    d.reserve(f.densities.size());
    for (size_t k = 0; k < f.densities.size(); ++k)
        d.push_back(f.densities[k] - g.densities[k]);
    return {f.algebra, std::move(d)};
}

bool leq(const NormalFunctional& f, const NormalFunctional& g, const TolerancePolicy& tol) {
    if (!(f.algebra == g.algebra)) throw InputError("leq: algebra mismatch");
    tol.validate();
    const double slack = tol.ineq_slack * functional_scale(f, g);
    for (int k = 0; k < f.algebra.num_blocks(); ++k) {
        SpectralDecomposition sd = eigh(g.densities[k] - f.densities[k]);
        if (sd.eigenvalues(0) < -slack) return false;
    }
    return true;
}

JordanDecomposition jordan(const HermitianFunctional& d, const TolerancePolicy& tol) {
    std::vector<Matrix> plus, minus;
    plus.reserve(d.densities.size());
    minus.reserve(d.densities.size());
    for (const Matrix& m : d.densities) {
        auto [p, n] = jordan_parts(m);
        plus.push_back(std::move(p));
        minus.push_back(std::move(n));
    }
    return {NormalFunctional(d.algebra, std::move(plus), tol),
            NormalFunctional(d.algebra, std::move(minus), tol)};
}

NormalFunctional abs_functional(const HermitianFunctional& d, const TolerancePolicy& tol) {
    std::vector<Matrix> a;
    a.reserve(d.densities.size());
    for (const Matrix& m : d.densities) a.push_back(abs_val(m));
    return {d.algebra, std::move(a), tol};
}

BlockOperator support_of(const NormalFunctional& f, const TolerancePolicy& tol) {
    BlockOperator s;
    s.reserve(f.densities.size());
    for (const Matrix& d : f.densities) s.push_back(support_proj(d, tol));
    return s;
}

bool orthogonal(const NormalFunctional& f, const NormalFunctional& g,
                const TolerancePolicy& tol) {
    if (!(f.algebra == g.algebra)) throw InputError("orthogonal: algebra mismatch");
    BlockOperator sf = support_of(f, tol);
    BlockOperator sg = support_of(g, tol);
    for (int k = 0; k < f.algebra.num_blocks(); ++k)
        if (op_norm(sf[k] * sg[k]) > tol.ineq_slack) return false;
    return true;
}

CompressedFunctional compress(const NormalFunctional& f, const BlockOperator& e,
                              const TolerancePolicy& tol) {
    check_shapes(f.algebra, e, "compress");
    tol.validate();
    CompressedFunctional out{NormalFunctional(f.algebra, f.densities, tol), {}, {}};
    std::vector<int> dims;
    std::vector<Matrix> comp_densities;
    std::vector<Matrix> isometries;
    std::vector<int> kept;
    for (int k = 0; k < f.algebra.num_blocks(); ++k) {
        if (!is_projection(e[k]))
            throw InputError("compress: e is not a projection blockwise");
        Matrix s = support_proj(f.densities[k], tol);
        if (op_norm(s - e[k] * s) > 1e-8 * std::max(1.0, op_norm(s)))
            throw DomainError("compress: projection does not dominate the support");
        SpectralDecomposition sd = eigh(e[k]);
        const int n = f.algebra.blocks[k];
        int r = 0;
        for (int i = 0; i < n; ++i)
            if (sd.eigenvalues(i) > 0.5) ++r;
        if (r == 0) continue;  // block entirely cut away
        Matrix v = sd.eigenvectors.rightCols(r);
        dims.push_back(r);
        comp_densities.push_back(hermitize(v.adjoint() * f.densities[k] * v));
        isometries.push_back(std::move(v));
        kept.push_back(k);
    }
    if (dims.empty()) throw DomainError("compress: projection is zero");
    out.functional = NormalFunctional(Algebra(dims), std::move(comp_densities), tol);
    out.isometries = std::move(isometries);
    out.kept_blocks = std::move(kept);
    return out;
}

}  // namespace relmod
