#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "subwick/subspace.hpp"

namespace subwick {

/// Projected generators whose norm drops below this fraction of the original
/// norm make a restriction degenerate.
inline constexpr double kDegenerateProjectionTol = 1e-12;
/// Default cap on the merged term count produced by power().
inline constexpr std::size_t kPowerTermCap = 200000;

/// One weighted term: a sorted size-m multiset of 0-based generator indices.
struct Term {
    std::vector<int> indices;
    double weight = 0.0;
};

/// Certificate that a generator family is delta-focused: the minimum pairwise
/// cosine together with the (1-based) pair of indices attaining it.
struct FocusCertificate {
    double delta = 0.0;  // in (0, 1]
    std::pair<int, int> witness{0, 0};
};

/// Raw result of the minimum-cosine scan. `focused()` distinguishes a usable
/// certificate from a failure (min cosine <= 0).
struct DeltaResult {
    double min_cosine = 0.0;
    std::pair<int, int> witness{0, 0};  // 1-based

    bool focused() const { return min_cosine > 0.0; }
    /// Throws NotApplicableError when not focused.
    FocusCertificate certificate() const;
};

/// Homogeneous degree-m polynomial written as a non-negative combination of
/// m-fold products of linear forms <c_i, x>. Immutable after construction.
class FocusedPolynomial {
public:
    /// Validates: n, m >= 1; every generator is a non-zero n-vector; every
    /// term holds exactly m in-range indices with weight >= 0; at least one
    /// weight is positive. Term indices are sorted on ingestion (multisets
    /// with repeated indices are accepted).
    FocusedPolynomial(int n, int m, std::vector<Eigen::VectorXd> generators,
                      std::vector<Term> terms);

    int ambient_dim() const { return n_; }
    int degree() const { return m_; }
    const std::vector<Eigen::VectorXd>& generators() const { return generators_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Eigen::VectorXd> generators_;
    std::vector<Term> terms_;
};

/// A pair (f, g) of degree-m polynomials over separate generator families,
/// focused through the cross cosines between a_i and b_j.
class FocusedPair {
public:
    FocusedPair(int n, int m, std::vector<Eigen::VectorXd> a_generators,
                std::vector<Eigen::VectorXd> b_generators, std::vector<Term> f_terms,
                std::vector<Term> g_terms);

    int ambient_dim() const { return n_; }
    int degree() const { return m_; }
    const std::vector<Eigen::VectorXd>& a_generators() const { return a_generators_; }
    const std::vector<Eigen::VectorXd>& b_generators() const { return b_generators_; }
    const std::vector<Term>& f_terms() const { return f_terms_; }
    const std::vector<Term>& g_terms() const { return g_terms_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Eigen::VectorXd> a_generators_;
    std::vector<Eigen::VectorXd> b_generators_;
    std::vector<Term> f_terms_;
    std::vector<Term> g_terms_;
};

/// f(x) = sum_I alpha_I prod_{i in I} <c_i, x>.
double evaluate(const FocusedPolynomial& poly, const Eigen::VectorXd& x);

/// Minimum cosine over all unordered pairs (i, j), i <= j, of one family.
/// The diagonal pairs contribute cosine 1 and are never the witness unless
/// the family has a single member.
DeltaResult compute_delta(const std::vector<Eigen::VectorXd>& generators);

/// Minimum cosine over all cross pairs (a_i, b_j).
DeltaResult compute_delta_cross(const std::vector<Eigen::VectorXd>& a_generators,
                                const std::vector<Eigen::VectorXd>& b_generators);

/// Restriction onto L: generators become their projection coordinates
/// frame^T c_i in R^k; terms and weights are unchanged. A projected
/// generator with norm < kDegenerateProjectionTol * |c_i| is an error.
FocusedPolynomial restrict_to(const FocusedPolynomial& poly, const Subspace& l);

/// f^p over the same generators. Duplicate index multisets merge by weight
/// addition; exceeding `max_terms` merged terms raises CapError.
FocusedPolynomial power(const FocusedPolynomial& poly, int p,
                        std::size_t max_terms = kPowerTermCap);

}  // namespace subwick
