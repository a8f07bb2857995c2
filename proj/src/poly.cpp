#include "subwick/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "subwick/errors.hpp"

namespace subwick {

namespace {

void validate_generators(const std::vector<Eigen::VectorXd>& generators, int n,
                         const char* side) {
    if (generators.empty()) {
        throw ValidationError(std::string(side) + ": at least one generator required");
    }
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != n) {
            throw ValidationError(std::string(side) + ": generator " +
                                  std::to_string(i + 1) + " has dimension " +
                                  std::to_string(generators[i].size()) + ", expected " +
                                  std::to_string(n));
        }
        if (!(generators[i].norm() > 0.0)) {
            throw ValidationError(std::string(side) + ": generator " +
                                  std::to_string(i + 1) + " has zero norm");
        }
    }
}

// Sorts indices in place, checks ranges and weights, requires one positive weight.
void validate_terms(std::vector<Term>& terms, int m, int num_generators,
                    const char* side) {
    if (terms.empty()) {
        throw ValidationError(std::string(side) + ": at least one term required");
    }
    bool any_positive = false;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        Term& term = terms[t];
        if (static_cast<int>(term.indices.size()) != m) {
            throw ValidationError(std::string(side) + ": term " + std::to_string(t + 1) +
                                  " has " + std::to_string(term.indices.size()) +
                                  " indices, expected degree " + std::to_string(m));
        }
        for (int idx : term.indices) {
            if (idx < 0 || idx >= num_generators) {
                throw ValidationError(std::string(side) + ": term " +
                                      std::to_string(t + 1) + " references generator " +
                                      std::to_string(idx + 1) + " outside [1, " +
                                      std::to_string(num_generators) + "]");
            }
        }
        if (!(term.weight >= 0.0)) {  // also rejects NaN
            throw ValidationError(std::string(side) + ": term " + std::to_string(t + 1) +
                                  " has negative or invalid weight");
        }
        if (term.weight > 0.0) any_positive = true;
        std::sort(term.indices.begin(), term.indices.end());
    }
    if (!any_positive) {
        throw ValidationError(std::string(side) + ": all term weights are zero");
    }
}

double term_product(const Term& term, const Eigen::VectorXd& dots) {
    double prod = 1.0;
    for (int idx : term.indices) prod *= dots(idx);
    return prod;
}

DeltaResult min_cosine_scan(const std::vector<Eigen::VectorXd>& u,
                            const std::vector<Eigen::VectorXd>& v, bool self) {
    std::vector<double> u_norms(u.size()), v_norms(v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        u_norms[i] = u[i].norm();
        if (!(u_norms[i] > 0.0)) throw ValidationError("compute_delta: zero vector present");
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
        v_norms[j] = v[j].norm();
        if (!(v_norms[j] > 0.0)) throw ValidationError("compute_delta: zero vector present");
    }
    DeltaResult result;
    result.min_cosine = 2.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = self ? i : 0; j < v.size(); ++j) {
            const double cos_ij =
                std::clamp(u[i].dot(v[j]) / (u_norms[i] * v_norms[j]), -1.0, 1.0);
            if (cos_ij < result.min_cosine) {
                result.min_cosine = cos_ij;
                result.witness = {static_cast<int>(i + 1), static_cast<int>(j + 1)};
            }
        }
    }
    return result;
}

}  // namespace

FocusCertificate DeltaResult::certificate() const {
    if (!focused()) {
        throw NotApplicableError(
            "not focused: minimum pairwise cosine " + std::to_string(min_cosine) +
            " (pair " + std::to_string(witness.first) + "," +
            std::to_string(witness.second) + ") is not positive");
    }
    return FocusCertificate{min_cosine, witness};
}

FocusedPolynomial::FocusedPolynomial(int n, int m,
                                     std::vector<Eigen::VectorXd> generators,
                                     std::vector<Term> terms)
    : n_(n), m_(m), generators_(std::move(generators)), terms_(std::move(terms)) {
    if (n_ < 1) throw ValidationError("polynomial: ambient dimension must be >= 1");
    if (m_ < 1) throw ValidationError("polynomial: degree must be >= 1");
    validate_generators(generators_, n_, "polynomial");
    validate_terms(terms_, m_, static_cast<int>(generators_.size()), "polynomial");
}

FocusedPair::FocusedPair(int n, int m, std::vector<Eigen::VectorXd> a_generators,
                         std::vector<Eigen::VectorXd> b_generators,
                         std::vector<Term> f_terms, std::vector<Term> g_terms)
    : n_(n),
      m_(m),
      a_generators_(std::move(a_generators)),
      b_generators_(std::move(b_generators)),
      f_terms_(std::move(f_terms)),
      g_terms_(std::move(g_terms)) {
    if (n_ < 1) throw ValidationError("pair: ambient dimension must be >= 1");
    if (m_ < 1) throw ValidationError("pair: degree must be >= 1");
    validate_generators(a_generators_, n_, "pair (f side)");
    validate_generators(b_generators_, n_, "pair (g side)");
    validate_terms(f_terms_, m_, static_cast<int>(a_generators_.size()), "pair (f side)");
    validate_terms(g_terms_, m_, static_cast<int>(b_generators_.size()), "pair (g side)");
}

double evaluate(const FocusedPolynomial& poly, const Eigen::VectorXd& x) {
    if (x.size() != poly.ambient_dim()) {
        throw ValidationError("evaluate: point has dimension " + std::to_string(x.size()) +
                              ", polynomial lives in R^" +
                              std::to_string(poly.ambient_dim()));
    }
    const auto& gens = poly.generators();
    Eigen::VectorXd dots(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) dots(static_cast<int>(i)) = gens[i].dot(x);
    double value = 0.0;
    for (const Term& term : poly.terms()) value += term.weight * term_product(term, dots);
    return value;
}

DeltaResult compute_delta(const std::vector<Eigen::VectorXd>& generators) {
    if (generators.empty()) throw ValidationError("compute_delta: empty generator list");
    return min_cosine_scan(generators, generators, /*self=*/true);
}

DeltaResult compute_delta_cross(const std::vector<Eigen::VectorXd>& a_generators,
                                const std::vector<Eigen::VectorXd>& b_generators) {
    if (a_generators.empty() || b_generators.empty()) {
        throw ValidationError("compute_delta: empty generator list");
    }
    return min_cosine_scan(a_generators, b_generators, /*self=*/false);
}

FocusedPolynomial restrict_to(const FocusedPolynomial& poly, const Subspace& l) {
    if (l.ambient_dim() != poly.ambient_dim()) {
        throw ValidationError("restrict: subspace ambient dimension " +
                              std::to_string(l.ambient_dim()) +
                              " does not match polynomial dimension " +
                              std::to_string(poly.ambient_dim()));
    }
    std::vector<Eigen::VectorXd> projected;
    projected.reserve(poly.generators().size());
    for (std::size_t i = 0; i < poly.generators().size(); ++i) {
        const Eigen::VectorXd& c = poly.generators()[i];
        Eigen::VectorXd coords = l.project_coords(c);
        if (coords.norm() < kDegenerateProjectionTol * c.norm()) {
            throw NotApplicableError("restrict: projection of generator " +
                                     std::to_string(i + 1) + " is numerically zero");
        }
        projected.push_back(std::move(coords));
    }
    return FocusedPolynomial(l.dim(), poly.degree(), std::move(projected), poly.terms());
}

FocusedPolynomial power(const FocusedPolynomial& poly, int p, std::size_t max_terms) {
    if (p < 1) throw ValidationError("power: exponent must be >= 1");
    if (p == 1) return poly;

    using Key = std::vector<int>;
    std::map<Key, double> acc;
    for (const Term& t : poly.terms()) acc[t.indices] += t.weight;

    for (int step = 1; step < p; ++step) {
        std::map<Key, double> next;
        for (const auto& [lhs, w_lhs] : acc) {
            for (const Term& t : poly.terms()) {
                Key merged(lhs.size() + t.indices.size());
                std::merge(lhs.begin(), lhs.end(), t.indices.begin(), t.indices.end(),
                           merged.begin());
                next[std::move(merged)] += w_lhs * t.weight;
                if (next.size() > max_terms) {
                    throw CapError("power: merged term count exceeds cap " +
                                   std::to_string(max_terms));
                }
            }
        }
        acc = std::move(next);
    }

    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [key, weight] : acc) terms.push_back(Term{key, weight});
    return FocusedPolynomial(poly.ambient_dim(), poly.degree() * p, poly.generators(),
                             std::move(terms));
}

}  // namespace subwick
