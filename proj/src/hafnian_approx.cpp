#include "subwick/hafnian_approx.hpp"

#include <cmath>
#include <string>

#include "subwick/errors.hpp"
#include "subwick/poly.hpp"

namespace subwick {

HafnianInstance::HafnianInstance(SymMatrix c, ShiftPolicy policy, double explicit_lambda)
    : c_(std::move(c)), policy_(policy), explicit_lambda_(explicit_lambda) {
    const int m = c_.size();
    if (m < 2 || m % 2 != 0) {
        throw ValidationError("hafnian instance: order must be even and >= 2, got " +
                              std::to_string(m));
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (!(c_(i, j) > 0.0)) {
                throw ValidationError("hafnian instance: off-diagonal entry (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      ") = " + std::to_string(c_(i, j)) +
                                      " must be strictly positive");
            }
        }
    }
    if (policy_ == ShiftPolicy::Explicit && !(explicit_lambda_ > 0.0)) {
        throw ValidationError("hafnian instance: explicit shift lambda must be positive");
    }
}

std::vector<Eigen::VectorXd> gram_decompose(const SymMatrix& c) {
    const int m = c.size();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.mat());
    if (solver.info() != Eigen::Success) {
        throw Error("gram_decompose: eigendecomposition failed");
    }
    const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
    if (eigenvalues.minCoeff() < -kPsdTol) {
        throw NotApplicableError("gram_decompose: matrix is not PSD (min eigenvalue " +
                                 std::to_string(eigenvalues.minCoeff()) + ")");
    }
    // rows of V sqrt(Lambda) reproduce C as their Gram matrix
    const Eigen::MatrixXd x =
        solver.eigenvectors() * eigenvalues.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    const double err = (x * x.transpose() - c.mat()).cwiseAbs().maxCoeff();
    if (err > 1e-9 * std::max(1.0, c.mat().cwiseAbs().maxCoeff())) {
        throw Error("gram_decompose: factor does not reproduce the input, error " +
                    std::to_string(err));
    }
    std::vector<Eigen::VectorXd> vectors;
    vectors.reserve(m);
    for (int i = 0; i < m; ++i) vectors.push_back(x.row(i).transpose());
    return vectors;
}

PreparedInstance prepare_instance(const HafnianInstance& inst) {
    const int m = inst.matrix().size();
    PreparedInstance out;

    switch (inst.policy()) {
        case ShiftPolicy::PsdAsGiven:
            out.shifted = inst.matrix();
            break;
        case ShiftPolicy::MinEigShift: {
            Eigen::MatrixXd zero_diag = inst.matrix().mat();
            zero_diag.diagonal().setZero();
            const double min_eig =
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(zero_diag)
                    .eigenvalues()
                    .minCoeff();
            // the smallest shift that restores PSD keeps the cosines c_ij/lambda
            // as large as possible
            const double lambda = std::max(0.0, -min_eig) + kShiftMargin;
            zero_diag.diagonal().setConstant(lambda);
            out.shifted = SymMatrix::from_dense(zero_diag);
            out.lambda = lambda;
            break;
        }
        case ShiftPolicy::Explicit: {
            Eigen::MatrixXd shifted = inst.matrix().mat();
            shifted.diagonal().setConstant(inst.explicit_lambda());
            out.shifted = SymMatrix::from_dense(shifted);
            out.lambda = inst.explicit_lambda();
            break;
        }
    }

    out.vectors = gram_decompose(out.shifted);
    double min_cosine = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double denom = std::sqrt(out.shifted(i, i) * out.shifted(j, j));
            if (!(denom > 0.0)) {
                throw NotApplicableError("prepare_instance: zero diagonal entry after shift");
            }
            min_cosine = std::min(min_cosine, out.shifted(i, j) / denom);
        }
    }
    out.delta = min_cosine;
    if (!(out.delta > 0.0)) {
        throw NotApplicableError("prepare_instance: shifted matrix has min cosine " +
                                 std::to_string(out.delta) + "; method not applicable");
    }
    return out;
}

HafnianApproxResult approx_hafnian(const HafnianInstance& inst, const EstimatorConfig& cfg) {
    const PreparedInstance prepared = prepare_instance(inst);
    const int m = inst.matrix().size();
    std::vector<int> all(m);
    for (int i = 0; i < m; ++i) all[i] = i;
    // haf C = integral of prod_i <c_i, x> d mu_m, a single-term focused polynomial
    const FocusedPolynomial poly(m, m, prepared.vectors, {Term{all, 1.0}});
    HafnianApproxResult result;
    result.report = estimate_gaussian_integral(poly, cfg);
    result.delta = prepared.delta;
    result.lambda = prepared.lambda;
    return result;
}

}  // namespace subwick
