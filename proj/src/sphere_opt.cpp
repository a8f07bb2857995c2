#include "subwick/sphere_opt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subwick/errors.hpp"
#include "subwick/gaussian.hpp"
#include "subwick/threads.hpp"

namespace subwick {

namespace {

// Restart start points live in their own seed domain, away from trial ids.
constexpr std::uint64_t kRestartDomain = 0x8000000000000000ULL;

double value_and_grad(const FocusedPolynomial& g, const Eigen::VectorXd& y,
                      Eigen::VectorXd* grad) {
    const auto& gens = g.generators();
    Eigen::VectorXd dots(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        dots(static_cast<int>(i)) = gens[i].dot(y);
    }
    if (grad != nullptr) grad->setZero();
    double value = 0.0;
    const int m = g.degree();
    std::vector<double> prefix(m + 1), suffix(m + 1);
    for (const Term& term : g.terms()) {
        if (term.weight == 0.0) continue;
        prefix[0] = 1.0;
        for (int s = 0; s < m; ++s) prefix[s + 1] = prefix[s] * dots(term.indices[s]);
        value += term.weight * prefix[m];
        if (grad == nullptr) continue;
        suffix[m] = 1.0;
        for (int s = m - 1; s >= 0; --s) suffix[s] = suffix[s + 1] * dots(term.indices[s]);
        for (int s = 0; s < m; ++s) {
            const double leave_one_out = prefix[s] * suffix[s + 1];
            *grad += term.weight * leave_one_out * gens[term.indices[s]];
        }
    }
    return value;
}

struct RestartResult {
    double value = 0.0;
    Eigen::VectorXd y;
    bool converged = false;
};

// Projected gradient ascent on S^{k-1} with arc-length steps and
// backtracking. The gradient tolerance is relative to m|g(y)| (by Euler's
// identity the full gradient norm is m|g| at critical points), which keeps
// the whole iteration invariant under positive scaling of the weights.
RestartResult ascend(const FocusedPolynomial& g, Eigen::VectorXd y, const OptConfig& cfg) {
    const int m = g.degree();
    Eigen::VectorXd grad(y.size());
    double val = value_and_grad(g, y, &grad);
    RestartResult result;
    double step = 0.5;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const Eigen::VectorXd riemannian = grad - grad.dot(y) * y;
        const double rnorm = riemannian.norm();
        if (rnorm <= cfg.grad_tol * m * std::abs(val)) {
            result.converged = true;
            break;
        }
        const Eigen::VectorXd direction = riemannian / rnorm;
        bool accepted = false;
        while (step >= cfg.step_tol) {
            const Eigen::VectorXd trial = (y + step * direction).normalized();
            const double trial_val = value_and_grad(g, trial, nullptr);
            if (trial_val > val) {
                y = trial;
                val = value_and_grad(g, y, &grad);
                step = std::min(2.0 * step, 1.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            result.converged = true;  // step collapsed below tolerance
            break;
        }
    }
    result.value = val;
    result.y = std::move(y);
    return result;
}

Eigen::VectorXd random_unit(int k, const RngSeed& seed) {
    CounterRng rng(seed);
    Eigen::VectorXd y(k);
    for (;;) {
        for (int i = 0; i < k; ++i) y(i) = rng.next_gaussian();
        const double norm = y.norm();
        if (norm > 1e-300) return y / norm;
    }
}

}  // namespace

void OptConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ValidationError("opt config: epsilon must be in (0,1)");
    }
    if (!(gamma > 0.0)) throw ValidationError("opt config: gamma must be positive");
    if (restarts < 1) throw ValidationError("opt config: restarts must be >= 1");
    if (max_iters < 1) throw ValidationError("opt config: max_iters must be >= 1");
    if (!(step_tol > 0.0)) throw ValidationError("opt config: step tolerance must be positive");
    if (!(grad_tol > 0.0)) throw ValidationError("opt config: gradient tolerance must be positive");
    if (k_override && *k_override < 1) {
        throw ValidationError("opt config: k_override must be >= 1");
    }
}

OptReport maximize_on_sphere(const FocusedPolynomial& poly, const OptConfig& cfg) {
    cfg.validate();
    const FocusCertificate cert = compute_delta(poly.generators()).certificate();
    const int n = poly.ambient_dim();
    const int m = poly.degree();
    const int k = choose_k(n, static_cast<int>(poly.generators().size()), cert.delta,
                           cfg.epsilon, cfg.gamma, cfg.k_override);
    const double scaling = std::pow(static_cast<double>(n) / k, 0.5 * m);

    const Subspace l = sample_subspace(n, k, cfg.seed);
    const FocusedPolynomial restricted = restrict_to(poly, l);

    std::vector<RestartResult> results(cfg.restarts);
    parallel_for_index(cfg.restarts, [&](int r) {
        const Eigen::VectorXd y0 =
            random_unit(k, cfg.seed.substream(kRestartDomain | static_cast<std::uint64_t>(r)));
        results[r] = ascend(restricted, y0, cfg);
    });

    OptReport report;
    report.k_used = k;
    report.delta_used = cert.delta;
    report.scaling = scaling;
    report.seed = cfg.seed;
    report.per_restart.reserve(cfg.restarts);
    int best = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
        report.per_restart.push_back(scaling * results[r].value);
        report.converged = report.converged || results[r].converged;
        if (results[r].value > results[best].value) best = r;
    }
    report.max_estimate = scaling * results[best].value;
    report.argmax_ambient = (l.frame() * results[best].y).normalized();
    return report;
}

double max_via_norms(const FocusedPolynomial& poly, int p, const OptConfig& cfg,
                     int max_size) {
    cfg.validate();
    if (p < 1) throw ValidationError("max_via_norms: p must be >= 1");
    const FocusCertificate cert = compute_delta(poly.generators()).certificate();
    const int n = poly.ambient_dim();
    const int m = poly.degree();
    if (2 * p * m > max_size) {
        throw CapError("max_via_norms: degree " + std::to_string(2 * p * m) +
                       " of f^{2p} exceeds hafnian cap " + std::to_string(max_size));
    }
    const int k = choose_k(n, static_cast<int>(poly.generators().size()), cert.delta,
                           cfg.epsilon, cfg.gamma, cfg.k_override);
    const Subspace l = sample_subspace(n, k, cfg.seed);
    const FocusedPolynomial restricted = restrict_to(poly, l);
    const FocusedPolynomial powered = power(restricted, 2 * p);
    const double gaussian = integrate_gaussian(powered, max_size);
    const double sphere = sphere_from_gaussian(gaussian, k, 2 * p * m);
    return std::pow(static_cast<double>(n) / k, 0.5 * m) *
           std::pow(sphere, 1.0 / (2.0 * p));
}

}  // namespace subwick
