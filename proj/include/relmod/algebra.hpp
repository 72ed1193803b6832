#pragma once

#include <vector>

#include "relmod/numerics.hpp"

namespace relmod {

/// Finite von Neumann algebra: a direct sum of full matrix blocks.
struct Algebra {
    std::vector<int> blocks;

    static constexpr int kMaxBlockDim = 256;

    explicit Algebra(std::vector<int> dims) : blocks(std::move(dims)) {
        if (blocks.empty()) throw InputError("Algebra: needs at least one block");
        for (int n : blocks)
            if (n < 1 || n > kMaxBlockDim)
                throw InputError("Algebra: block dimension out of range");
    }

    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int total_dim() const {
        int d = 0;
        for (int n : blocks) d += n;
        return d;
    }
    bool operator==(const Algebra& other) const { return blocks == other.blocks; }
};

/// One matrix per block; the representation of operators in the algebra.
using BlockOperator = std::vector<Matrix>;

BlockOperator block_identity(const Algebra& a);

/// phi(x) = sum_k Tr(D_k x_k) with Hermitian densities D_k. Base class for the
/// positive (NormalFunctional) and signed (HermitianFunctional) cases.
struct HermitianFunctional {
    Algebra algebra;
    std::vector<Matrix> densities;

    HermitianFunctional(Algebra a, std::vector<Matrix> d);

    /// f(1): total trace of the densities (real for Hermitian densities).
    double total() const;
};

struct NormalFunctional : HermitianFunctional {
    NormalFunctional(Algebra a, std::vector<Matrix> d, const TolerancePolicy& tol = {});
};

Complex evaluate(const HermitianFunctional& f, const BlockOperator& x);

NormalFunctional operator+(const NormalFunctional& f, const NormalFunctional& g);
NormalFunctional operator*(double c, const NormalFunctional& f);
HermitianFunctional operator-(const HermitianFunctional& f, const HermitianFunctional& g);

/// f <= g as functionals: every block of g - f is PSD within ineq_slack.
/// The slack scales with max(f(1), g(1), 1).
bool leq(const NormalFunctional& f, const NormalFunctional& g,
         const TolerancePolicy& tol = {});

struct JordanDecomposition {
    NormalFunctional plus;
    NormalFunctional minus;
};

JordanDecomposition jordan(const HermitianFunctional& d, const TolerancePolicy& tol = {});

/// Blockwise spectral |d| as a positive functional.
NormalFunctional abs_functional(const HermitianFunctional& d, const TolerancePolicy& tol = {});

/// True iff the supports of f and g are orthogonal in every block.
bool orthogonal(const NormalFunctional& f, const NormalFunctional& g,
                const TolerancePolicy& tol = {});

BlockOperator support_of(const NormalFunctional& f, const TolerancePolicy& tol = {});

/// Result of cutting a functional down to a dominating projection e: the
/// functional on the compressed algebra plus the isometries used, so that
/// operators can be moved across (x -> V* x V).
struct CompressedFunctional {
    NormalFunctional functional;
    std::vector<Matrix> isometries;  // one n_k x r_k isometry per surviving block
    std::vector<int> kept_blocks;    // indices into the original algebra
};

/// Compress f to the corner e M e. Throws DomainError if e does not dominate
/// the support of f.
CompressedFunctional compress(const NormalFunctional& f, const BlockOperator& e,
                              const TolerancePolicy& tol = {});

}  // namespace relmod
