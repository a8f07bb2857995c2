#include "subwick/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "subwick/errors.hpp"

namespace subwick {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double term) {
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

void check_even_order(int m, int cap, const char* what) {
    if (m < 2) {
        throw ValidationError(std::string(what) + ": order must be >= 2, got " +
                              std::to_string(m));
    }
    if (m % 2 != 0) {
        throw ValidationError(std::string(what) + ": order must be even, got " +
                              std::to_string(m));
    }
    if (m > cap) {
        throw CapError(std::string(what) + ": order " + std::to_string(m) +
                       " exceeds cap " + std::to_string(cap));
    }
}

}  // namespace

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols()) {
        throw ValidationError("symmetric matrix must be square, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * scale) {
        throw ValidationError("matrix is not symmetric: max |C_ij - C_ji| = " +
                              std::to_string(asym));
    }
    SymMatrix out;
    out.mat_ = 0.5 * (m + m.transpose());  // exactly symmetric
    return out;
}

SymMatrix SymMatrix::gram(const std::vector<Eigen::VectorXd>& vectors) {
    const int m = static_cast<int>(vectors.size());
    SymMatrix g(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            if (vectors[i].size() != vectors[j].size()) {
                throw ValidationError("gram: vectors have mismatched dimensions");
            }
            g.set(i, j, vectors[i].dot(vectors[j]));
        }
    }
    return g;
}

double hafnian(const SymMatrix& c, int max_size) {
    const int m = c.size();
    check_even_order(m, std::min(max_size, 26), "hafnian");  // 2^m table entries

    // haf over index subsets S (bitmask): pair the lowest member of S with
    // every other member. Only even-popcount masks are ever read.
    const std::uint32_t full = (1u << m) - 1u;
    std::vector<double> haf(static_cast<std::size_t>(full) + 1, 0.0);
    haf[0] = 1.0;
    for (std::uint32_t mask = 3; mask <= full; ++mask) {
        if (std::popcount(mask) % 2 != 0) continue;
        const int i = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);  // drop lowest bit
        CompensatedSum acc;
        std::uint32_t bits = rest;
        while (bits != 0) {
            const int j = std::countr_zero(bits);
            bits &= bits - 1;
            acc.add(c(i, j) * haf[rest & ~(1u << j)]);
        }
        haf[mask] = acc.value();
    }
    return haf[full];
}

namespace {

double haf_enumerate(const SymMatrix& c, std::vector<int>& idx) {
    if (idx.empty()) return 1.0;
    const int i = idx.front();
    double total = 0.0;
    for (std::size_t t = 1; t < idx.size(); ++t) {
        const int j = idx[t];
        std::vector<int> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t s = 1; s < idx.size(); ++s) {
            if (s != t) rest.push_back(idx[s]);
        }
        total += c(i, j) * haf_enumerate(c, rest);
    }
    return total;
}

}  // namespace

double hafnian_oracle(const SymMatrix& c, int max_size) {
    const int m = c.size();
    check_even_order(m, max_size, "hafnian_oracle");
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    return haf_enumerate(c, idx);
}

double permanent(const Eigen::MatrixXd& c, int max_size) {
    if (c.rows() != c.cols()) {
        throw ValidationError("permanent: matrix must be square");
    }
    const int m = static_cast<int>(c.rows());
    if (m == 0) return 1.0;
    if (m > max_size) {
        throw CapError("permanent: order " + std::to_string(m) + " exceeds cap " +
                       std::to_string(max_size));
    }

    // Ryser with Gray-code column updates:
    // per C = (-1)^m sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} c_ij.
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(m);
    CompensatedSum acc;
    const std::uint64_t total = 1ULL << m;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < total; ++k) {
        const std::uint64_t next = k ^ (k >> 1);
        const int j = std::countr_zero(gray ^ next);
        if ((next >> j) & 1ULL) {
            rowsum += c.col(j);
        } else {
            rowsum -= c.col(j);
        }
        gray = next;
        double prod = 1.0;
        for (int i = 0; i < m; ++i) {
            prod *= rowsum(i);
            if (prod == 0.0) break;
        }
        const int sign = ((m - std::popcount(gray)) % 2 != 0) ? -1 : 1;
        acc.add(sign * prod);
    }
    return acc.value();
}

double permanent_oracle(const Eigen::MatrixXd& c, int max_size) {
    if (c.rows() != c.cols()) {
        throw ValidationError("permanent_oracle: matrix must be square");
    }
    const int m = static_cast<int>(c.rows());
    if (m == 0) return 1.0;
    if (m > max_size) {
        throw CapError("permanent_oracle: order " + std::to_string(m) + " exceeds cap " +
                       std::to_string(max_size));
    }
    std::vector<int> sigma(m);
    for (int i = 0; i < m; ++i) sigma[i] = i;
    double total = 0.0;
    do {
        double prod = 1.0;
        for (int i = 0; i < m; ++i) prod *= c(i, sigma[i]);
        total += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

}  // namespace subwick
