#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "subwick/estimator.hpp"
#include "subwick/matching.hpp"

namespace subwick {

/// Eigenvalues may dip this far below zero and still count as PSD.
inline constexpr double kPsdTol = 1e-9;
/// Safety margin added to the minimum-eigenvalue diagonal shift.
inline constexpr double kShiftMargin = 1e-9;

enum class ShiftPolicy {
    PsdAsGiven,      // use C as supplied; it must already be PSD
    MinEigShift,     // zero the diagonal, then set it to -lambda_min + margin
    Explicit,        // zero the diagonal, then set it to a user-chosen lambda
};

/// An even-order symmetric matrix with strictly positive off-diagonal
/// entries, plus the diagonal policy used to make it a Gram matrix. The
/// hafnian ignores the diagonal, so any policy targets haf(C).
class HafnianInstance {
public:
    HafnianInstance(SymMatrix c, ShiftPolicy policy, double explicit_lambda = 0.0);

    const SymMatrix& matrix() const { return c_; }
    ShiftPolicy policy() const { return policy_; }
    double explicit_lambda() const { return explicit_lambda_; }

private:
    SymMatrix c_;
    ShiftPolicy policy_ = ShiftPolicy::MinEigShift;
    double explicit_lambda_ = 0.0;
};

/// Vectors c_1..c_m in R^m with <c_i, c_j> = C_ij (within 1e-9), computed by
/// symmetric eigendecomposition so semidefinite inputs are tolerated.
/// Throws NotApplicableError when C has an eigenvalue below -kPsdTol.
std::vector<Eigen::VectorXd> gram_decompose(const SymMatrix& c);

struct PreparedInstance {
    std::vector<Eigen::VectorXd> vectors;  // Gram vectors of the shifted matrix
    double delta = 0.0;                    // min_{i != j} C'_ij / sqrt(C'_ii C'_jj)
    std::optional<double> lambda;          // diagonal value applied, if any
    SymMatrix shifted;
};

/// Applies the shift policy, decomposes, and certifies the focus delta.
/// haf(shifted) == haf(C) because the hafnian ignores the diagonal.
PreparedInstance prepare_instance(const HafnianInstance& inst);

struct HafnianApproxResult {
    EstimateReport report;          // estimate targets haf(C)
    double delta = 0.0;
    std::optional<double> lambda;
};

/// Section 3.2 pipeline: run the randomized Gaussian integrator on the
/// single-term focused polynomial prod_i <c_i, x> built from the Gram
/// vectors of the shifted matrix.
HafnianApproxResult approx_hafnian(const HafnianInstance& inst,
                                   const EstimatorConfig& cfg);

}  // namespace subwick
