#include "subwick/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "subwick/errors.hpp"

namespace subwick {

double wick_integral(const std::vector<Eigen::VectorXd>& vectors, int max_size) {
    const int m = static_cast<int>(vectors.size());
    if (m == 0) return 1.0;
    if (m % 2 != 0) return 0.0;  // odd products integrate to zero
    return hafnian(SymMatrix::gram(vectors), max_size);
}

double integrate_gaussian(const FocusedPolynomial& poly, int max_size) {
    const int m = poly.degree();
    if (m % 2 != 0) return 0.0;
    if (m > max_size) {
        throw CapError("integrate_gaussian: degree " + std::to_string(m) +
                       " exceeds hafnian cap " + std::to_string(max_size));
    }
    // One N x N Gram of the generators, then an m x m submatrix per term.
    const auto& gens = poly.generators();
    const SymMatrix gram = SymMatrix::gram(gens);
    double total = 0.0;
    for (const Term& term : poly.terms()) {
        if (term.weight == 0.0) continue;
        SymMatrix sub(m);
        for (int s = 0; s < m; ++s) {
            for (int t = s; t < m; ++t) {
                sub.set(s, t, gram(term.indices[s], term.indices[t]));
            }
        }
        total += term.weight * hafnian(sub, max_size);
    }
    return total;
}

double monomial_gaussian_integral(const std::vector<int>& alpha) {
    double log_value = 0.0;
    const double log_gamma_half = std::lgamma(0.5);
    for (int a : alpha) {
        if (a < 0) {
            throw ValidationError("monomial integral: exponents must be non-negative");
        }
        if (a % 2 != 0) return 0.0;
        if (a == 0) continue;
        log_value += 0.5 * a * std::numbers::ln2;
        log_value += std::lgamma(0.5 * (a + 1)) - log_gamma_half;
    }
    return std::exp(log_value);
}

double sphere_factor(int n, int m) {
    if (n < 1) throw ValidationError("sphere_factor: dimension must be >= 1");
    if (m < 0 || m % 2 != 0) {
        throw ValidationError("sphere_factor: degree must be even and >= 0, got " +
                              std::to_string(m));
    }
    if (m == 0) return 1.0;
    const double half_n = 0.5 * n;
    const double half_m = 0.5 * m;
    return std::exp(std::lgamma(half_n) - half_m * std::numbers::ln2 -
                    std::lgamma(half_n + half_m));
}

double sphere_from_gaussian(double gaussian_value, int n, int m) {
    return gaussian_value * sphere_factor(n, m);
}

}  // namespace subwick
