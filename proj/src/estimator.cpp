#include "subwick/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subwick/errors.hpp"
#include "subwick/threads.hpp"

namespace subwick {

namespace {

double median_of(std::vector<double> values) {
    if (values.empty()) throw Error("median of empty trial list");
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];  // trial counts are odd
}

}  // namespace

void EstimatorConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ValidationError("estimator config: epsilon must be in (0,1)");
    }
    if (!(gamma > 0.0)) {
        throw ValidationError("estimator config: gamma must be positive");
    }
    if (trials < 1 || trials % 2 == 0) {
        throw ValidationError("estimator config: trials must be a positive odd integer");
    }
    if (k_override && *k_override < 1) {
        throw ValidationError("estimator config: k_override must be >= 1");
    }
}

int choose_k(int n, int num_generators, double delta, double epsilon, double gamma,
             std::optional<int> k_override) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw ValidationError("choose_k: delta must be in (0,1]");
    }
    if (k_override) return std::min(n, *k_override);
    const double bound = gamma / (epsilon * epsilon) / (delta * delta) *
                         std::log(static_cast<double>(num_generators) + 2.0);
    const double rounded = std::ceil(bound);
    if (rounded >= static_cast<double>(n)) return n;
    return std::max(1, static_cast<int>(rounded));
}

int choose_k(int n, int num_generators, double delta, const EstimatorConfig& cfg) {
    cfg.validate();
    return choose_k(n, num_generators, delta, cfg.epsilon, cfg.gamma, cfg.k_override);
}

EstimateReport estimate_gaussian_integral(const FocusedPolynomial& poly,
                                          const EstimatorConfig& cfg) {
    cfg.validate();
    const FocusCertificate cert = compute_delta(poly.generators()).certificate();
    const int n = poly.ambient_dim();
    const int m = poly.degree();
    const int k = choose_k(n, static_cast<int>(poly.generators().size()), cert.delta, cfg);
    const double scaling = std::pow(static_cast<double>(n) / k, 0.5 * m);

    EstimateReport report;
    report.k_used = k;
    report.delta_used = cert.delta;
    report.scaling = scaling;
    report.seed = cfg.seed;
    report.per_trial.assign(cfg.trials, 0.0);

    parallel_for_index(cfg.trials, [&](int t) {
        const Subspace l =
            sample_subspace(n, k, cfg.seed.substream(static_cast<std::uint64_t>(t)));
        report.per_trial[t] = scaling * integrate_gaussian(restrict_to(poly, l));
    });
    report.estimate = median_of(report.per_trial);
    return report;
}

EstimateReport estimate_sphere_integral(const FocusedPolynomial& poly,
                                        const EstimatorConfig& cfg) {
    cfg.validate();
    if (poly.degree() % 2 != 0) {
        // odd homogeneous polynomials integrate to zero on the sphere
        EstimateReport report;
        report.delta_used = compute_delta(poly.generators()).certificate().delta;
        report.seed = cfg.seed;
        return report;
    }
    EstimateReport report = estimate_gaussian_integral(poly, cfg);
    const double factor = sphere_factor(poly.ambient_dim(), poly.degree());
    for (double& v : report.per_trial) v *= factor;
    report.estimate *= factor;
    return report;
}

}  // namespace subwick
