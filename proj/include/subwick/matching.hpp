#pragma once

#include <Eigen/Dense>

namespace subwick {

inline constexpr int kHafnianCap = 20;
inline constexpr int kHafnianOracleCap = 12;
inline constexpr int kPermanentCap = 16;
inline constexpr int kPermanentOracleCap = 8;

/// Dense symmetric matrix. Symmetry holds by construction: the stored
/// matrix always satisfies C(i,j) == C(j,i) exactly.
class SymMatrix {
public:
    SymMatrix() = default;
    /// Zero matrix of the given order.
    explicit SymMatrix(int size) : mat_(Eigen::MatrixXd::Zero(size, size)) {}

    /// Build from a dense matrix. Entries may disagree across the diagonal
    /// by at most `tol` relative to the largest entry; the result is the
    /// exactly symmetric average (C + C^T)/2.
    static SymMatrix from_dense(const Eigen::MatrixXd& m, double tol = 1e-12);

    /// Gram matrix of a family of equal-dimension vectors.
    static SymMatrix gram(const std::vector<Eigen::VectorXd>& vectors);

    int size() const { return static_cast<int>(mat_.rows()); }
    double operator()(int i, int j) const { return mat_(i, j); }
    /// Writes both (i,j) and (j,i).
    void set(int i, int j, double v) {
        mat_(i, j) = v;
        mat_(j, i) = v;
    }
    const Eigen::MatrixXd& mat() const { return mat_; }

private:
    Eigen::MatrixXd mat_;
};

/// Hafnian of an even-order symmetric matrix: the sum over all (m-1)!!
/// perfect matchings of {1..m} of the product of matched entries. The
/// diagonal never contributes. Exact subset dynamic program, O(m^2 2^m)
/// time and O(2^m) memory, with compensated inner summation.
double hafnian(const SymMatrix& c, int max_size = kHafnianCap);

/// Independent brute-force hafnian: direct recursive enumeration of the
/// unordered pair partitions. Meant for cross-checking `hafnian` in tests.
double hafnian_oracle(const SymMatrix& c, int max_size = kHafnianOracleCap);

/// Permanent of a square matrix via Ryser's formula with Gray-code updates,
/// O(m 2^m). Compensated outer summation.
double permanent(const Eigen::MatrixXd& c, int max_size = kPermanentCap);

/// Factorial-sum permanent: enumerates all m! permutations directly.
double permanent_oracle(const Eigen::MatrixXd& c, int max_size = kPermanentOracleCap);

}  // namespace subwick
