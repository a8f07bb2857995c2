#include "subwick/subspace.hpp"

#include <cmath>
#include <string>

#include "subwick/errors.hpp"

namespace subwick {

Subspace Subspace::from_frame(Eigen::MatrixXd frame) {
    const int n = static_cast<int>(frame.rows());
    const int k = static_cast<int>(frame.cols());
    if (k < 1 || k > n) {
        throw ValidationError("subspace frame must be n x k with 1 <= k <= n, got " +
                              std::to_string(n) + "x" + std::to_string(k));
    }
    const Eigen::MatrixXd gram = frame.transpose() * frame;
    const double err =
        (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > kFrameOrthoTol) {
        throw ValidationError("frame columns are not orthonormal: max deviation " +
                              std::to_string(err));
    }
    Subspace l;
    l.frame_ = std::move(frame);
    return l;
}

Eigen::VectorXd Subspace::project_coords(const Eigen::VectorXd& x) const {
    if (x.size() != frame_.rows()) {
        throw ValidationError("project: vector has dimension " +
                              std::to_string(x.size()) + ", subspace ambient is " +
                              std::to_string(frame_.rows()));
    }
    return frame_.transpose() * x;
}

Subspace sample_subspace(int n, int k, const RngSeed& seed) {
    if (n < 1 || k < 1 || k > n) {
        throw ValidationError("sample_subspace: need 1 <= k <= n, got n=" +
                              std::to_string(n) + " k=" + std::to_string(k));
    }
    CounterRng rng(seed);
    Eigen::MatrixXd q(n, k);
    for (int attempt = 0; attempt < 64; ++attempt) {
        // k independent Gaussian columns, filled column by column
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < n; ++i) q(i, j) = rng.next_gaussian();
        }
        // modified Gram-Schmidt with one re-orthogonalization pass
        bool degenerate = false;
        for (int j = 0; j < k && !degenerate; ++j) {
            const double raw_norm = q.col(j).norm();
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i < j; ++i) {
                    q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
                }
            }
            const double norm = q.col(j).norm();
            if (norm < kRankDeficiencyTol * raw_norm) {
                degenerate = true;
                break;
            }
            q.col(j) /= norm;
        }
        if (!degenerate) {
            // columns are orthonormal by construction, skip re-validation
            Subspace l;
            l.frame_ = std::move(q);
            return l;
        }
        rng.discard_spare();  // resample from a clean Box-Muller state
    }
    throw Error("sample_subspace: repeated rank deficiency; this should not happen");
}

Projection project(const Subspace& l, const Eigen::VectorXd& x) {
    Projection p;
    p.coords = l.project_coords(x);
    p.norm = p.coords.norm();
    return p;
}

double jl_empirical_check(int n, int k, double eps, int trials, const RngSeed& seed) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ValidationError("jl_empirical_check: eps must be in (0,1)");
    }
    if (trials < 1) {
        throw ValidationError("jl_empirical_check: trials must be >= 1");
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x(0) = 1.0;  // fixed unit vector; the law of |x'| is the same for any unit x
    const double ratio = std::sqrt(static_cast<double>(n) / k);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const Subspace l = sample_subspace(n, k, seed.substream(static_cast<std::uint64_t>(t)));
        const double scaled = ratio * project(l, x).norm;
        if (scaled < (1.0 - eps) || scaled > 1.0 / (1.0 - eps)) ++failures;
    }
    return static_cast<double>(failures) / trials;
}

bool pairwise_gram_check(const std::vector<Eigen::VectorXd>& a_vecs,
                         const std::vector<Eigen::VectorXd>& b_vecs,
                         const Subspace& l, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ValidationError("pairwise_gram_check: eps must be in (0,1)");
    }
    const double k_over_n = static_cast<double>(l.dim()) / l.ambient_dim();
    std::vector<Eigen::VectorXd> a_proj, b_proj;
    a_proj.reserve(a_vecs.size());
    b_proj.reserve(b_vecs.size());
    for (const auto& a : a_vecs) a_proj.push_back(l.project_coords(a));
    for (const auto& b : b_vecs) b_proj.push_back(l.project_coords(b));
    for (std::size_t i = 0; i < a_vecs.size(); ++i) {
        for (std::size_t j = 0; j < b_vecs.size(); ++j) {
            const double ambient = k_over_n * a_vecs[i].dot(b_vecs[j]);
            const double projected = a_proj[i].dot(b_proj[j]);
            if ((1.0 - eps) * projected > ambient) return false;
            if (ambient > projected / (1.0 - eps)) return false;
        }
    }
    return true;
}

}  // namespace subwick
