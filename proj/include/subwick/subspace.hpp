#pragma once

#include <Eigen/Dense>
#include <vector>

#include "subwick/rng.hpp"

namespace subwick {

/// Orthonormality tolerance enforced on frames accepted from outside.
inline constexpr double kFrameOrthoTol = 1e-10;
/// Relative residual norm below which a Gram-Schmidt column counts as rank
/// deficient and the whole frame is resampled.
inline constexpr double kRankDeficiencyTol = 1e-10;

/// A k-dimensional linear subspace of R^n held as an n x k frame with
/// orthonormal columns.
class Subspace {
public:
    /// Validates frame^T frame = I_k within kFrameOrthoTol per entry.
    static Subspace from_frame(Eigen::MatrixXd frame);

    int ambient_dim() const { return static_cast<int>(frame_.rows()); }
    int dim() const { return static_cast<int>(frame_.cols()); }
    const Eigen::MatrixXd& frame() const { return frame_; }

    /// Coordinates of the orthogonal projection of x in the frame basis.
    Eigen::VectorXd project_coords(const Eigen::VectorXd& x) const;

private:
    Eigen::MatrixXd frame_;

    friend Subspace sample_subspace(int n, int k, const RngSeed& seed);
};

struct Projection {
    Eigen::VectorXd coords;  // k coordinates in the frame basis
    double norm = 0.0;       // == |P_L x|
};

/// Haar-random subspace: draws k independent standard Gaussian n-vectors
/// (column by column, Box-Muller on the counter generator) and orthonormalizes
/// them by modified Gram-Schmidt with one re-orthogonalization pass. Numerical
/// rank deficiency triggers a full resample from the continuing counter.
Subspace sample_subspace(int n, int k, const RngSeed& seed);

/// Orthogonal projection of x onto L, returned as frame coordinates plus norm.
Projection project(const Subspace& l, const Eigen::VectorXd& x);

/// Empirical Johnson-Lindenstrauss check: samples `trials` subspaces and for
/// the fixed unit vector e1 tests (1-eps)|x| <= sqrt(n/k)|x'| <= (1-eps)^-1 |x|.
/// Returns the observed failure rate (to be compared against 4 exp(-eps^2 k/4)).
double jl_empirical_check(int n, int k, double eps, int trials, const RngSeed& seed);

/// True iff (1-eps) <a_i', b_j'> <= (k/n) <a_i, b_j> <= (1-eps)^-1 <a_i', b_j'>
/// for every cross pair, with projections taken onto L.
bool pairwise_gram_check(const std::vector<Eigen::VectorXd>& a_vecs,
                         const std::vector<Eigen::VectorXd>& b_vecs,
                         const Subspace& l, double eps);

}  // namespace subwick
