#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "subwick/estimator.hpp"
#include "subwick/poly.hpp"

namespace subwick {

/// Brute-force budget for the vector partition demo: (M+1)^N enumerated
/// coefficient tuples.
inline constexpr std::uint64_t kPartitionBruteCap = 10000000;

/// Sparse polynomial in monomial form: exponent vector -> coefficient.
class MonomialPolynomial {
public:
    explicit MonomialPolynomial(int n) : n_(n) {}

    int ambient_dim() const { return n_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    /// Adds coeff * x^alpha, merging with an existing term.
    void add_term(const std::vector<int>& alpha, double coeff);

    /// this := this * other (distributes and merges).
    void multiply(const MonomialPolynomial& other);

private:
    int n_ = 0;
    std::map<std::vector<int>, double> terms_;
};

struct PartitionInstance {
    std::vector<Eigen::VectorXi> a;  // N non-negative integer n-vectors
    Eigen::VectorXi b;               // target vector
    int m_cap = 0;                   // coefficients k_i range over 0..m_cap

    void validate() const;
};

/// Scalar product <f, g> over the complex Gaussian measure, via the complex
/// Wick formula: sum over term pairs (I, J) of alpha_I beta_J per(C) with
/// C_st = <a_{i_s}, b_{j_t}>.
double pairing_exact_permanent(const FocusedPair& pair, int max_size = kPermanentCap);

/// Same scalar product from monomial expansions:
/// sum over shared exponents of a_alpha b_alpha alpha_1! ... alpha_n!.
double pairing_exact_monomial(const MonomialPolynomial& f, const MonomialPolynomial& g);

/// Randomized pairing: per trial, restrict both generator families onto a
/// Haar-random L and scale the exact restricted pairing by (n/k)^m (degree-m
/// f times degree-m g); median across trials. Requires a positive cross
/// focus certificate.
EstimateReport pairing_randomized(const FocusedPair& pair, const EstimatorConfig& cfg);

/// Number of solutions (k_1..k_N) in {0..M}^N of k_1 a_1 + ... + k_N a_N = b,
/// computed as <prod_i sum_k x^{k a_i}, x^b> / (b_1! ... b_n!).
std::int64_t vector_partition_demo(const PartitionInstance& inst,
                                   std::uint64_t brute_cap = kPartitionBruteCap);

/// The same count by direct enumeration of all (M+1)^N coefficient tuples.
std::int64_t vector_partition_enumerate(const PartitionInstance& inst,
                                        std::uint64_t brute_cap = kPartitionBruteCap);

}  // namespace subwick
