#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "subwick/errors.hpp"
#include "subwick/poly.hpp"
#include "subwick/rng.hpp"
#include "subwick/subspace.hpp"

using namespace subwick;
using namespace subwick::testing;

namespace {

FocusedPolynomial random_focused(int n, int num_gens, int degree, int num_terms,
                                 CounterRng& rng, double spread = 0.3) {
    auto gens = clustered_generators(n, num_gens, spread, rng);
    std::vector<Term> terms;
    for (int t = 0; t < num_terms; ++t) {
        terms.push_back(Term{random_term_indices(degree, num_gens, rng), rng.next_unit()});
    }
    return FocusedPolynomial(n, degree, std::move(gens), std::move(terms));
}

}  // namespace

TEST_CASE("evaluate: <c,x>^2 with c = e1 at (3,4)") {
    Eigen::VectorXd c(2);
    c << 1.0, 0.0;
    FocusedPolynomial f(2, 2, {c}, {Term{{0, 0}, 1.0}});
    Eigen::VectorXd x(2);
    x << 3.0, 4.0;
    CHECK(evaluate(f, x) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("evaluate: homogeneous polynomials vanish at the origin") {
    CounterRng rng({11, 0});
    const auto f = random_focused(4, 3, 3, 2, rng);
    CHECK(evaluate(f, Eigen::VectorXd::Zero(4)) == 0.0);
}

TEST_CASE("evaluate: x1^2 x2^2 via duplicated basis generators") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(2, 1);
    FocusedPolynomial f(2, 4, {e1, e1, e2, e2}, {Term{{0, 1, 2, 3}, 1.0}});
    Eigen::VectorXd x(2);
    x << 1.0, 2.0;
    // direct expansion oracle: x1^2 * x2^2
    const double expected = x(0) * x(0) * x(1) * x(1);
    CHECK(expected == doctest::Approx(4.0));
    CHECK(evaluate(f, x) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("evaluate agrees with the expanded monomial form") {
    CounterRng rng({12, 0});
    const auto f = random_focused(3, 4, 3, 3, rng);
    const MonomialPolynomial expanded = expand_focused(f.generators(), f.terms(), 3);
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd x(3);
        for (int d = 0; d < 3; ++d) x(d) = rng.next_gaussian();
        CHECK(evaluate(f, x) == doctest::Approx(eval_monomial(expanded, x)).epsilon(1e-11));
    }
}

TEST_CASE("evaluate rejects dimension mismatch") {
    Eigen::VectorXd c(2);
    c << 1.0, 0.0;
    FocusedPolynomial f(2, 2, {c}, {Term{{0, 0}, 1.0}});
    CHECK_THROWS_AS(evaluate(f, Eigen::VectorXd::Zero(3)), ValidationError);
}

TEST_CASE("compute_delta on parallel, slanted, and orthogonal pairs") {
    Eigen::VectorXd a(2), b(2), d(2);
    a << 1.0, 0.0;
    b << 1.0, 0.0;
    const DeltaResult parallel = compute_delta({a, b});
    CHECK(parallel.focused());
    CHECK(parallel.min_cosine == doctest::Approx(1.0));

    d << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DeltaResult slanted = compute_delta({a, d});
    CHECK(slanted.min_cosine == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(slanted.witness == std::pair<int, int>{1, 2});

    Eigen::VectorXd e2(2);
    e2 << 0.0, 1.0;
    const DeltaResult orthogonal = compute_delta({a, e2});
    CHECK_FALSE(orthogonal.focused());
    CHECK_THROWS_AS(orthogonal.certificate(), NotApplicableError);
}

TEST_CASE("compute_delta: single generator certifies delta 1 via the diagonal pair") {
    Eigen::VectorXd c(3);
    c << 1.0, 2.0, 3.0;
    const DeltaResult r = compute_delta({c});
    CHECK(r.min_cosine == doctest::Approx(1.0));
    CHECK(r.witness == std::pair<int, int>{1, 1});
}

TEST_CASE("compute_delta rejects zero vectors") {
    CHECK_THROWS_AS(compute_delta({Eigen::VectorXd::Zero(2)}), ValidationError);
}

TEST_CASE("compute_delta is permutation and scale invariant") {
    CounterRng rng({13, 0});
    auto gens = clustered_generators(4, 5, 0.4, rng);
    const double base = compute_delta(gens).min_cosine;
    std::swap(gens[0], gens[3]);
    std::swap(gens[1], gens[4]);
    CHECK(compute_delta(gens).min_cosine == doctest::Approx(base).epsilon(1e-13));
    for (auto& g : gens) g *= 0.5 + 3.0 * rng.next_unit();
    CHECK(compute_delta(gens).min_cosine == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("cross delta covers orthogonal rejection upstream") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(2, 1);
    CHECK_FALSE(compute_delta_cross({e1}, {e2}).focused());
    CHECK(compute_delta_cross({e1}, {e1}).min_cosine == doctest::Approx(1.0));
}

TEST_CASE("restrict: generator inside L evaluates identically on L") {
    Eigen::MatrixXd frame(3, 2);
    frame << 1, 0, 0, 1, 0, 0;
    const Subspace l = Subspace::from_frame(frame);
    Eigen::VectorXd c(3);
    c << 2.0, -1.0, 0.0;  // c lies in L
    FocusedPolynomial f(3, 2, {c}, {Term{{0, 0}, 1.5}});
    const FocusedPolynomial g = restrict_to(f, l);
    CounterRng rng({14, 0});
    for (int rep = 0; rep < 5; ++rep) {
        Eigen::VectorXd y(2);
        y << rng.next_gaussian(), rng.next_gaussian();
        const Eigen::VectorXd x = frame * y;  // point of L
        CHECK(evaluate(g, y) == doctest::Approx(evaluate(f, x)).epsilon(1e-12));
    }
}

TEST_CASE("restrict with the identity frame keeps generators; full frames keep the Gram") {
    CounterRng rng({15, 0});
    const auto f = random_focused(4, 3, 2, 2, rng);
    const Subspace identity = Subspace::from_frame(Eigen::MatrixXd::Identity(4, 4));
    const FocusedPolynomial same = restrict_to(f, identity);
    for (std::size_t i = 0; i < f.generators().size(); ++i) {
        CHECK((same.generators()[i] - f.generators()[i]).norm() == doctest::Approx(0.0));
    }
    // a rotated full frame preserves the Gram matrix of the generators
    const Subspace rotated = sample_subspace(4, 4, {99, 0});
    const FocusedPolynomial g = restrict_to(f, rotated);
    for (std::size_t i = 0; i < f.generators().size(); ++i) {
        for (std::size_t j = 0; j < f.generators().size(); ++j) {
            CHECK(g.generators()[i].dot(g.generators()[j]) ==
                  doctest::Approx(f.generators()[i].dot(f.generators()[j])).epsilon(1e-12));
        }
    }
}

TEST_CASE("restrict: projection coordinate of e1 onto the diagonal line") {
    Eigen::MatrixXd frame(2, 1);
    frame << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const Subspace l = Subspace::from_frame(frame);
    Eigen::VectorXd c(2);
    c << 1.0, 0.0;
    FocusedPolynomial f(2, 1, {c}, {Term{{0}, 1.0}});
    const FocusedPolynomial g = restrict_to(f, l);
    CHECK(g.generators()[0](0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("restrict flags numerically vanishing projections") {
    Eigen::MatrixXd frame(2, 1);
    frame << 0.0, 1.0;
    const Subspace l = Subspace::from_frame(frame);
    Eigen::VectorXd c(2);
    c << 1.0, 0.0;  // orthogonal to L
    FocusedPolynomial f(2, 1, {c}, {Term{{0}, 1.0}});
    CHECK_THROWS_AS(restrict_to(f, l), NotApplicableError);
}

TEST_CASE("restrict commutes with evaluation at projected points") {
    CounterRng rng({16, 0});
    const auto f = random_focused(6, 4, 3, 3, rng);
    const Subspace l = sample_subspace(6, 3, {123, 1});
    const FocusedPolynomial g = restrict_to(f, l);
    for (int rep = 0; rep < 10; ++rep) {
        Eigen::VectorXd x(6);
        for (int d = 0; d < 6; ++d) x(d) = rng.next_gaussian();
        const Eigen::VectorXd coords = l.project_coords(x);
        const Eigen::VectorXd ambient_projection = l.frame() * coords;
        CHECK(evaluate(g, coords) ==
              doctest::Approx(evaluate(f, ambient_projection)).epsilon(1e-10));
    }
}

TEST_CASE("power: p = 1 returns the same polynomial") {
    CounterRng rng({17, 0});
    const auto f = random_focused(3, 3, 2, 2, rng);
    const FocusedPolynomial g = power(f, 1);
    CHECK(g.degree() == f.degree());
    CHECK(g.terms().size() == f.terms().size());
}

TEST_CASE("power: cube of a weighted linear form") {
    Eigen::VectorXd c(2);
    c << 1.0, 1.0;
    FocusedPolynomial f(2, 1, {c}, {Term{{0}, 2.0}});
    const FocusedPolynomial g = power(f, 3);
    CHECK(g.degree() == 3);
    REQUIRE(g.terms().size() == 1);
    CHECK(g.terms()[0].indices == std::vector<int>{0, 0, 0});
    CHECK(g.terms()[0].weight == doctest::Approx(8.0));
}

TEST_CASE("power: two-term square merges into the binomial weights") {
    Eigen::VectorXd a(2), b(2);
    a << 1.0, 0.2;
    b << 1.0, -0.2;
    FocusedPolynomial f(2, 1, {a, b}, {Term{{0}, 1.0}, Term{{1}, 1.0}});
    const FocusedPolynomial g = power(f, 2);
    REQUIRE(g.terms().size() == 3);  // {0,0}, {0,1}, {1,1}
    CHECK(g.terms()[0].weight == doctest::Approx(1.0));
    CHECK(g.terms()[1].weight == doctest::Approx(2.0));
    CHECK(g.terms()[2].weight == doctest::Approx(1.0));
}

TEST_CASE("power respects the merged term cap") {
    CounterRng rng({18, 0});
    const auto f = random_focused(3, 6, 2, 6, rng);
    CHECK_THROWS_AS(power(f, 4, 50), CapError);
}

TEST_CASE("evaluate(power(f,p)) equals evaluate(f)^p") {
    CounterRng rng({19, 0});
    const auto f = random_focused(4, 4, 2, 3, rng);
    for (int p = 1; p <= 4; ++p) {
        const FocusedPolynomial fp = power(f, p);
        for (int rep = 0; rep < 5; ++rep) {
            Eigen::VectorXd x(4);
            for (int d = 0; d < 4; ++d) x(d) = rng.next_gaussian();
            const double direct = std::pow(evaluate(f, x), p);
            CHECK(evaluate(fp, x) == doctest::Approx(direct).epsilon(1e-10));
        }
    }
}

TEST_CASE("power keeps the focus certificate of the generator set") {
    CounterRng rng({20, 0});
    const auto f = random_focused(4, 5, 2, 3, rng);
    const double base = compute_delta(f.generators()).min_cosine;
    const FocusedPolynomial f3 = power(f, 3);
    CHECK(compute_delta(f3.generators()).min_cosine == doctest::Approx(base));
}

TEST_CASE("constructor validation") {
    const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(2, 0);
    // zero-norm generator
    CHECK_THROWS_AS(FocusedPolynomial(2, 1, {Eigen::VectorXd::Zero(2)}, {Term{{0}, 1.0}}),
                    ValidationError);
    // index out of range
    CHECK_THROWS_AS(FocusedPolynomial(2, 1, {e1}, {Term{{1}, 1.0}}), ValidationError);
    // wrong arity
    CHECK_THROWS_AS(FocusedPolynomial(2, 2, {e1}, {Term{{0}, 1.0}}), ValidationError);
    // negative weight
    CHECK_THROWS_AS(FocusedPolynomial(2, 1, {e1}, {Term{{0}, -1.0}}), ValidationError);
    // all weights zero
    CHECK_THROWS_AS(FocusedPolynomial(2, 1, {e1}, {Term{{0}, 0.0}}), ValidationError);
    // generator dimension mismatch
    CHECK_THROWS_AS(FocusedPolynomial(3, 1, {e1}, {Term{{0}, 1.0}}), ValidationError);
    // unsorted indices are accepted and sorted
    const Eigen::VectorXd e2 = Eigen::VectorXd::Unit(2, 1);
    FocusedPolynomial f(2, 2, {e1, e2}, {Term{{1, 0}, 1.0}});
    CHECK(f.terms()[0].indices == std::vector<int>{0, 1});
}
