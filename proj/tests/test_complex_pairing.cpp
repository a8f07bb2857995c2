#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "subwick/complex_pairing.hpp"
#include "subwick/errors.hpp"
#include "subwick/matching.hpp"
#include "subwick/subspace.hpp"

using namespace subwick;
using namespace subwick::testing;

namespace {

FocusedPair random_pair(int n, int degree, int num_gens, int num_terms, CounterRng& rng) {
    auto a = clustered_generators(n, num_gens, 0.25, rng);
    auto b = clustered_generators(n, num_gens, 0.25, rng);
    // both families share the cluster axis only by chance; re-center b on a's axis
    b = a;
    for (auto& v : b) {
        for (int d = 0; d < n; ++d) v(d) += 0.2 * rng.next_gaussian();
    }
    std::vector<Term> f_terms, g_terms;
    for (int t = 0; t < num_terms; ++t) {
        f_terms.push_back(Term{random_term_indices(degree, num_gens, rng), rng.next_unit()});
        g_terms.push_back(Term{random_term_indices(degree, num_gens, rng), rng.next_unit()});
    }
    return FocusedPair(n, degree, std::move(a), std::move(b), std::move(f_terms),
                       std::move(g_terms));
}

}  // namespace

TEST_CASE("pairing of x1^2 with itself is 2! = 2") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    const FocusedPair pair(2, 2, {e1}, {e1}, {Term{{0, 0}, 1.0}}, {Term{{0, 0}, 1.0}});
    CHECK(pairing_exact_permanent(pair) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("pairing of x1 with x2 vanishes") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(2, 1);
    const FocusedPair pair(2, 1, {e1}, {e2}, {Term{{0}, 1.0}}, {Term{{0}, 1.0}});
    CHECK(pairing_exact_permanent(pair) == 0.0);
}

TEST_CASE("pairing of <c,x> with itself is |c|^2") {
    Eigen::VectorXd c(3);
    c << 1.0, -2.0, 0.5;
    const FocusedPair pair(3, 1, {c}, {c}, {Term{{0}, 1.0}}, {Term{{0}, 1.0}});
    CHECK(pairing_exact_permanent(pair) == doctest::Approx(c.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("monomial pairing basics") {
    MonomialPolynomial f(2), g(2), h(2), k(2);
    f.add_term({2, 0}, 1.0);  // x1^2
    CHECK(pairing_exact_monomial(f, f) == doctest::Approx(2.0));  // 2!
    g.add_term({0, 2}, 1.0);  // x2^2: disjoint support
    CHECK(pairing_exact_monomial(f, g) == 0.0);
    h.add_term({1, 1}, 1.0);  // x1 x2
    k.add_term({1, 1}, 1.0);
    CHECK(pairing_exact_monomial(h, k) == doctest::Approx(1.0));  // 1! 1!
}

TEST_CASE("permanent route equals the monomial route (complex Wick equivalence)") {
    CounterRng rng({111, 0});
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 3);       // 2..4
        const int m = 1 + static_cast<int>(rng.next_u64() % 4);       // 1..4
        const int gens = 1 + static_cast<int>(rng.next_u64() % 3);    // 1..3
        const FocusedPair pair = random_pair(n, m, gens, 2, rng);
        const double via_permanent = pairing_exact_permanent(pair);
        const MonomialPolynomial f =
            expand_focused(pair.a_generators(), pair.f_terms(), n);
        const MonomialPolynomial g =
            expand_focused(pair.b_generators(), pair.g_terms(), n);
        const double via_monomial = pairing_exact_monomial(f, g);
        CHECK(via_permanent ==
              doctest::Approx(via_monomial).epsilon(1e-9).scale(std::max(1.0, std::abs(via_monomial))));
    }
}

TEST_CASE("pairing is symmetric in its arguments") {
    CounterRng rng({112, 0});
    const FocusedPair pair = random_pair(3, 2, 2, 2, rng);
    const FocusedPair swapped(3, 2, pair.b_generators(), pair.a_generators(),
                              pair.g_terms(), pair.f_terms());
    CHECK(pairing_exact_permanent(pair) ==
          doctest::Approx(pairing_exact_permanent(swapped)).epsilon(1e-12));
}

TEST_CASE("pairing is invariant under a common rotation") {
    CounterRng rng({113, 0});
    const int n = 4;
    const FocusedPair pair = random_pair(n, 2, 2, 2, rng);
    const double base = pairing_exact_permanent(pair);
    const Eigen::MatrixXd u = sample_subspace(n, n, {114, 0}).frame();
    std::vector<Eigen::VectorXd> a_rot, b_rot;
    for (const auto& v : pair.a_generators()) a_rot.push_back(u.transpose() * v);
    for (const auto& v : pair.b_generators()) b_rot.push_back(u.transpose() * v);
    const FocusedPair rotated(n, 2, a_rot, b_rot, pair.f_terms(), pair.g_terms());
    CHECK(pairing_exact_permanent(rotated) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("polarization identity: repeated vectors give m! <a,b>^m") {
    CounterRng rng({115, 0});
    Eigen::VectorXd a(3), b(3);
    for (int d = 0; d < 3; ++d) {
        a(d) = rng.next_gaussian();
        b(d) = a(d) + 0.1 * rng.next_gaussian();
    }
    for (int m : {1, 2, 3, 4}) {
        Eigen::MatrixXd c(m, m);
        c.setConstant(a.dot(b));
        double m_factorial = 1.0;
        for (int i = 2; i <= m; ++i) m_factorial *= i;
        CHECK(permanent(c) ==
              doctest::Approx(m_factorial * std::pow(a.dot(b), m)).epsilon(1e-11));
    }
}

TEST_CASE("randomized pairing at k = n is exact with scaling 1") {
    CounterRng rng({116, 0});
    const int n = 8;
    const FocusedPair pair = random_pair(n, 2, 3, 2, rng);
    const double exact = pairing_exact_permanent(pair);
    EstimatorConfig cfg;
    cfg.trials = 5;
    cfg.k_override = n;
    cfg.seed = {117, 0};
    const EstimateReport report = pairing_randomized(pair, cfg);
    CHECK(report.scaling == doctest::Approx(1.0));
    for (double v : report.per_trial) CHECK(v == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("randomized pairing of <c,x> with itself averages to |c|^2") {
    const int n = 20, k = 5;
    CounterRng rng({118, 0});
    Eigen::VectorXd c(n);
    for (int d = 0; d < n; ++d) c(d) = rng.next_gaussian();
    const FocusedPair pair(n, 1, {c}, {c}, {Term{{0}, 1.0}}, {Term{{0}, 1.0}});
    EstimatorConfig cfg;
    cfg.trials = 2001;
    cfg.k_override = k;
    cfg.seed = {119, 0};
    const EstimateReport report = pairing_randomized(pair, cfg);
    RunningStats stats;
    for (double v : report.per_trial) stats.add(v);
    CHECK(std::abs(stats.mean - c.squaredNorm()) <= 3.0 * stats.std_error());
}

TEST_CASE("randomized pairing bracket holds on the clustered fixture") {
    CounterRng rng({120, 0});
    const int n = 30;
    const FocusedPair pair = random_pair(n, 2, 4, 2, rng);
    const double exact = pairing_exact_permanent(pair);
    const double eps = 0.5;
    // at the prescribed k (clamped to n here) the two-sided bound must hold in
    // >= 2/3 - 3 se of single trials
    EstimatorConfig cfg;
    cfg.epsilon = eps;
    cfg.trials = 301;
    cfg.seed = {121, 0};
    const EstimateReport report = pairing_randomized(pair, cfg);
    const double lo = std::pow(1.0 - eps, 2);  // m = 2: (1-eps)^m
    const double hi = 1.0 / lo;
    int hits = 0;
    for (double v : report.per_trial) {
        if (v >= lo * exact && v <= hi * exact) ++hits;
    }
    const double rate = static_cast<double>(hits) / report.per_trial.size();
    const double se = std::sqrt(rate * (1.0 - rate) / report.per_trial.size() + 1e-12);
    CHECK(rate >= 2.0 / 3.0 - 3.0 * se);
}

TEST_CASE("randomized pairing requires a positive cross certificate") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(2, 1);
    const FocusedPair pair(2, 1, {e1}, {e2}, {Term{{0}, 1.0}}, {Term{{0}, 1.0}});
    EstimatorConfig cfg;
    cfg.seed = {122, 0};
    CHECK_THROWS_AS(pairing_randomized(pair, cfg), NotApplicableError);
}

TEST_CASE("vector partition demo: unique solution instance") {
    PartitionInstance inst;
    inst.a = {Eigen::Vector2i(1, 0), Eigen::Vector2i(0, 1)};
    inst.b = Eigen::Vector2i(2, 3);
    inst.m_cap = 5;
    CHECK(vector_partition_demo(inst) == 1);  // k = (2, 3) only
    CHECK(vector_partition_enumerate(inst) == 1);
}

TEST_CASE("vector partition demo: 2 + 0 = 1 + 1 = 0 + 2") {
    PartitionInstance inst;
    inst.a = {Eigen::VectorXi::Ones(1), Eigen::VectorXi::Ones(1)};
    inst.b = Eigen::VectorXi::Constant(1, 2);
    inst.m_cap = 2;
    CHECK(vector_partition_demo(inst) == 3);
    CHECK(vector_partition_enumerate(inst) == 3);
}

TEST_CASE("vector partition demo: unreachable targets count zero") {
    PartitionInstance inst;
    inst.a = {Eigen::Vector2i(2, 0)};
    inst.b = Eigen::Vector2i(1, 1);
    inst.m_cap = 6;
    CHECK(vector_partition_demo(inst) == 0);
}

TEST_CASE("vector partition demo agrees with enumeration on random instances") {
    CounterRng rng({123, 0});
    for (int rep = 0; rep < 20; ++rep) {
        PartitionInstance inst;
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const int count = 1 + static_cast<int>(rng.next_u64() % 4);
        for (int i = 0; i < count; ++i) {
            Eigen::VectorXi v(n);
            for (int d = 0; d < n; ++d) v(d) = static_cast<int>(rng.next_u64() % 3);
            if (v.maxCoeff() == 0) v(0) = 1;
            inst.a.push_back(v);
        }
        inst.m_cap = 1 + static_cast<int>(rng.next_u64() % 5);
        inst.b = Eigen::VectorXi(n);
        for (int d = 0; d < n; ++d) inst.b(d) = static_cast<int>(rng.next_u64() % 8);
        CHECK(vector_partition_demo(inst) == vector_partition_enumerate(inst));
    }
}

TEST_CASE("vector partition cap rejects oversized instances") {
    PartitionInstance inst;
    for (int i = 0; i < 9; ++i) inst.a.push_back(Eigen::VectorXi::Ones(2));
    inst.b = Eigen::Vector2i(3, 3);
    inst.m_cap = 6;  // 7^9 > 1e7
    CHECK_THROWS_AS(vector_partition_demo(inst), CapError);
}

TEST_CASE("pairing degree cap is enforced") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    const FocusedPair pair(2, 17, {e1}, {e1},
                           {Term{std::vector<int>(17, 0), 1.0}},
                           {Term{std::vector<int>(17, 0), 1.0}});
    CHECK_THROWS_AS(pairing_exact_permanent(pair), CapError);
}
