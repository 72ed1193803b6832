#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relmod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (shape mismatch, non-finite entries, ...).
struct InputError : Error {
    using Error::Error;
};

/// A matrix that was required to be positive semidefinite is not.
struct NotPSDError : Error {
    using Error::Error;
};

/// Operation applied outside its mathematical domain (support violations etc.).
struct DomainError : Error {
    using Error::Error;
};

/// A stated precondition on the arguments does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// Iterative scheme failed to reach its target accuracy.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Shared numerical knobs. All thresholds are relative; they are independent
/// of each other on purpose.
struct TolerancePolicy {
    /// Eigenvalues below support_cut * (largest eigenvalue) count as zero.
    double support_cut = 1e-10;
    /// Negative eigenvalues up to psd_slack * op-norm are clipped, beyond is an error.
    double psd_slack = 1e-10;
    /// Relative slack applied to inequality verdicts.
    double ineq_slack = 1e-9;

    void validate() const {
        if (!(support_cut > 0.0) || !(psd_slack > 0.0) || !(ineq_slack > 0.0))
            throw InputError("TolerancePolicy: all thresholds must be strictly positive");
    }
};

}  // namespace relmod
