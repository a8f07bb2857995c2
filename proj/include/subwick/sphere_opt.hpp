#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "subwick/estimator.hpp"
#include "subwick/poly.hpp"

namespace subwick {

struct OptConfig {
    double epsilon = 0.5;
    double gamma = 64.0;
    int restarts = 32;
    int max_iters = 500;
    double step_tol = 1e-10;   // arc-length step below which a restart stops
    double grad_tol = 1e-8;    // relative Riemannian gradient tolerance
    std::optional<int> k_override;
    RngSeed seed;

    void validate() const;
};

struct OptReport {
    double max_estimate = 0.0;        // (n/k)^{m/2} * best restricted value
    Eigen::VectorXd argmax_ambient;   // unit-norm lift frame * y_best
    int k_used = 0;
    std::vector<double> per_restart;  // scaled best value of each restart
    bool converged = false;           // false when every restart hit max_iters
    double delta_used = 0.0;
    double scaling = 1.0;
    RngSeed seed;
};

/// Approximate max of a focused polynomial on the unit sphere: restrict onto
/// a Haar-random k-dimensional subspace and run multi-start projected
/// gradient ascent on S^{k-1} (analytic product-rule gradients, arc-length
/// steps with backtracking), then rescale by (n/k)^{m/2}. The report is
/// best-found; no global optimality is claimed.
OptReport maximize_on_sphere(const FocusedPolynomial& poly, const OptConfig& cfg);

/// L^{2p}-norm proxy for the max: (integral of f^{2p} over S^{k-1} in L)^{1/2p}
/// rescaled by (n/k)^{m/2}. Errors out (CapError) when 2 p m exceeds the
/// hafnian cap rather than truncating.
double max_via_norms(const FocusedPolynomial& poly, int p, const OptConfig& cfg,
                     int max_size = kHafnianCap);

}  // namespace subwick
