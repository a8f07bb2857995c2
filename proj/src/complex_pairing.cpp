#include "subwick/complex_pairing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subwick/errors.hpp"
#include "subwick/matching.hpp"
#include "subwick/subspace.hpp"
#include "subwick/threads.hpp"

namespace subwick {

namespace {

double factorial(int a) {
    double f = 1.0;
    for (int i = 2; i <= a; ++i) f *= i;
    return f;
}

// permanent of the cross-Gram submatrix selected by one (I, J) term pair
double term_pair_permanent(const std::vector<Eigen::VectorXd>& a_gens,
                           const std::vector<Eigen::VectorXd>& b_gens, const Term& f_term,
                           const Term& g_term, int m, int max_size) {
    Eigen::MatrixXd c(m, m);
    for (int s = 0; s < m; ++s) {
        for (int t = 0; t < m; ++t) {
            c(s, t) = a_gens[f_term.indices[s]].dot(b_gens[g_term.indices[t]]);
        }
    }
    return permanent(c, max_size);
}

}  // namespace

void MonomialPolynomial::add_term(const std::vector<int>& alpha, double coeff) {
    if (static_cast<int>(alpha.size()) != n_) {
        throw ValidationError("monomial polynomial: exponent vector has size " +
                              std::to_string(alpha.size()) + ", expected " +
                              std::to_string(n_));
    }
    for (int a : alpha) {
        if (a < 0) throw ValidationError("monomial polynomial: negative exponent");
    }
    terms_[alpha] += coeff;
}

void MonomialPolynomial::multiply(const MonomialPolynomial& other) {
    if (other.n_ != n_) {
        throw ValidationError("monomial polynomial: dimension mismatch in product");
    }
    std::map<std::vector<int>, double> product;
    for (const auto& [alpha, ca] : terms_) {
        for (const auto& [beta, cb] : other.terms_) {
            std::vector<int> sum(n_);
            for (int i = 0; i < n_; ++i) sum[i] = alpha[i] + beta[i];
            product[std::move(sum)] += ca * cb;
        }
    }
    terms_ = std::move(product);
}

void PartitionInstance::validate() const {
    if (a.empty()) throw ValidationError("partition instance: need at least one vector a_i");
    const int n = static_cast<int>(b.size());
    if (n < 1) throw ValidationError("partition instance: target b must be non-empty");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != n) {
            throw ValidationError("partition instance: a_" + std::to_string(i + 1) +
                                  " has dimension " + std::to_string(a[i].size()) +
                                  ", expected " + std::to_string(n));
        }
        if (a[i].minCoeff() < 0) {
            throw ValidationError("partition instance: a_" + std::to_string(i + 1) +
                                  " has negative entries");
        }
    }
    if (b.minCoeff() < 0) {
        throw ValidationError("partition instance: target b has negative entries");
    }
    if (m_cap < 1) throw ValidationError("partition instance: M must be >= 1");
}

double pairing_exact_permanent(const FocusedPair& pair, int max_size) {
    const int m = pair.degree();
    if (m > max_size) {
        throw CapError("pairing: degree " + std::to_string(m) + " exceeds permanent cap " +
                       std::to_string(max_size));
    }
    double total = 0.0;
    for (const Term& f_term : pair.f_terms()) {
        if (f_term.weight == 0.0) continue;
        for (const Term& g_term : pair.g_terms()) {
            if (g_term.weight == 0.0) continue;
            total += f_term.weight * g_term.weight *
                     term_pair_permanent(pair.a_generators(), pair.b_generators(), f_term,
                                         g_term, m, max_size);
        }
    }
    return total;
}

double pairing_exact_monomial(const MonomialPolynomial& f, const MonomialPolynomial& g) {
    if (f.ambient_dim() != g.ambient_dim()) {
        throw ValidationError("pairing: polynomials live in different dimensions");
    }
    // monomials are orthogonal: only shared exponents contribute alpha!
    double total = 0.0;
    const auto& ft = f.terms();
    const auto& gt = g.terms();
    auto it_f = ft.begin();
    auto it_g = gt.begin();
    while (it_f != ft.end() && it_g != gt.end()) {
        if (it_f->first < it_g->first) {
            ++it_f;
        } else if (it_g->first < it_f->first) {
            ++it_g;
        } else {
            double fact = 1.0;
            for (int a : it_f->first) fact *= factorial(a);
            total += it_f->second * it_g->second * fact;
            ++it_f;
            ++it_g;
        }
    }
    return total;
}

EstimateReport pairing_randomized(const FocusedPair& pair, const EstimatorConfig& cfg) {
    cfg.validate();
    const FocusCertificate cert =
        compute_delta_cross(pair.a_generators(), pair.b_generators()).certificate();
    const int n = pair.ambient_dim();
    const int m = pair.degree();
    const int num_gens = static_cast<int>(
        std::max(pair.a_generators().size(), pair.b_generators().size()));
    const int k = choose_k(n, num_gens, cert.delta, cfg);
    // degree-m f times degree-m conj(g): the scale exponent is m, not m/2
    const double scaling = std::pow(static_cast<double>(n) / k, m);

    EstimateReport report;
    report.k_used = k;
    report.delta_used = cert.delta;
    report.scaling = scaling;
    report.seed = cfg.seed;
    report.per_trial.assign(cfg.trials, 0.0);

    parallel_for_index(cfg.trials, [&](int t) {
        const Subspace l =
            sample_subspace(n, k, cfg.seed.substream(static_cast<std::uint64_t>(t)));
        std::vector<Eigen::VectorXd> a_proj, b_proj;
        a_proj.reserve(pair.a_generators().size());
        b_proj.reserve(pair.b_generators().size());
        for (const auto& a : pair.a_generators()) a_proj.push_back(l.project_coords(a));
        for (const auto& b : pair.b_generators()) b_proj.push_back(l.project_coords(b));
        const FocusedPair restricted(k, m, std::move(a_proj), std::move(b_proj),
                                     pair.f_terms(), pair.g_terms());
        report.per_trial[t] = scaling * pairing_exact_permanent(restricted);
    });

    std::vector<double> sorted = report.per_trial;
    std::sort(sorted.begin(), sorted.end());
    report.estimate = sorted[sorted.size() / 2];
    return report;
}

std::int64_t vector_partition_demo(const PartitionInstance& inst, std::uint64_t brute_cap) {
    inst.validate();
    const int n = static_cast<int>(inst.b.size());
    const int num_vectors = static_cast<int>(inst.a.size());

    double combos = 1.0;
    for (int i = 0; i < num_vectors; ++i) combos *= inst.m_cap + 1;
    if (combos > static_cast<double>(brute_cap)) {
        throw CapError("vector partition: (M+1)^N = " + std::to_string(combos) +
                       " exceeds brute-force cap " + std::to_string(brute_cap));
    }

    // f = prod_i (sum_{k=0..M} x^{k a_i}), g = x^b
    MonomialPolynomial f(n);
    f.add_term(std::vector<int>(n, 0), 1.0);
    for (int i = 0; i < num_vectors; ++i) {
        MonomialPolynomial factor(n);
        for (int k = 0; k <= inst.m_cap; ++k) {
            std::vector<int> alpha(n);
            for (int d = 0; d < n; ++d) alpha[d] = k * inst.a[i](d);
            factor.add_term(alpha, 1.0);
        }
        f.multiply(factor);
    }
    MonomialPolynomial g(n);
    std::vector<int> target(n);
    for (int d = 0; d < n; ++d) target[d] = inst.b(d);
    g.add_term(target, 1.0);

    double beta_factorials = 1.0;
    for (int d = 0; d < n; ++d) beta_factorials *= factorial(inst.b(d));
    const double count = pairing_exact_monomial(f, g) / beta_factorials;
    const double rounded = std::round(count);
    if (std::abs(count - rounded) > 1e-6 * std::max(1.0, std::abs(count))) {
        throw Error("vector partition: non-integer count " + std::to_string(count));
    }
    return static_cast<std::int64_t>(rounded);
}

std::int64_t vector_partition_enumerate(const PartitionInstance& inst,
                                        std::uint64_t brute_cap) {
    inst.validate();
    const int n = static_cast<int>(inst.b.size());
    const int num_vectors = static_cast<int>(inst.a.size());

    double combos = 1.0;
    for (int i = 0; i < num_vectors; ++i) combos *= inst.m_cap + 1;
    if (combos > static_cast<double>(brute_cap)) {
        throw CapError("vector partition: (M+1)^N exceeds brute-force cap");
    }

    std::vector<int> coeff(num_vectors, 0);
    std::int64_t count = 0;
    for (;;) {
        Eigen::VectorXi sum = Eigen::VectorXi::Zero(n);
        for (int i = 0; i < num_vectors; ++i) sum += coeff[i] * inst.a[i];
        if (sum == inst.b) ++count;
        int pos = 0;
        while (pos < num_vectors) {
            if (++coeff[pos] <= inst.m_cap) break;
            coeff[pos] = 0;
            ++pos;
        }
        if (pos == num_vectors) break;
    }
    return count;
}

}  // namespace subwick
