#pragma once

#include <optional>
#include <vector>

#include "subwick/gaussian.hpp"
#include "subwick/poly.hpp"
#include "subwick/rng.hpp"

namespace subwick {

/// Parameters of the randomized subspace estimator. gamma multiplies the
/// dimension bound k >= gamma eps^-2 delta^-2 ln(N+2); the default 64 is a
/// calibration choice, not a theoretical constant.
struct EstimatorConfig {
    double epsilon = 0.5;               // in (0, 1)
    double gamma = 64.0;                // > 0
    int trials = 11;                    // odd, for an exact median
    std::optional<int> k_override;      // bypasses the bound when set
    RngSeed seed;

    /// Throws ValidationError on out-of-range fields.
    void validate() const;
};

struct EstimateReport {
    double estimate = 0.0;            // median of per_trial
    std::vector<double> per_trial;    // scaled per-subspace values, by trial index
    int k_used = 0;
    double delta_used = 0.0;
    double scaling = 1.0;             // (n/k)^{m/2} (pairing uses (n/k)^m)
    RngSeed seed;
};

/// Subspace dimension: min(n, ceil(gamma eps^-2 delta^-2 ln(N+2))), or the
/// override if one is set (still clamped to n).
int choose_k(int n, int num_generators, double delta, double epsilon, double gamma,
             std::optional<int> k_override = std::nullopt);
int choose_k(int n, int num_generators, double delta, const EstimatorConfig& cfg);

/// Randomized Gaussian integral: per trial t, sample L_t from the Haar
/// measure with seed substream t, integrate the restriction exactly, scale by
/// (n/k)^{m/2}; report the median across trials.
EstimateReport estimate_gaussian_integral(const FocusedPolynomial& poly,
                                          const EstimatorConfig& cfg);

/// Same pipeline followed by the Gaussian-to-sphere conversion at the ambient
/// dimension. Odd-degree input returns a zero estimate without sampling.
EstimateReport estimate_sphere_integral(const FocusedPolynomial& poly,
                                        const EstimatorConfig& cfg);

}  // namespace subwick
