#pragma once

#include <Eigen/Dense>
#include <vector>

#include "subwick/matching.hpp"
#include "subwick/poly.hpp"

namespace subwick {

// All integrals are against the standard Gaussian measure with density
// (2 pi)^{-d/2} exp(-|x|^2/2), or the Haar probability measure on the sphere.

/// Wick formula: integral of prod <a_i, x> d mu_n equals the hafnian of the
/// Gram matrix of the vectors. Odd m integrates to 0; empty product to 1.
double wick_integral(const std::vector<Eigen::VectorXd>& vectors,
                     int max_size = kHafnianCap);

/// Exact Gaussian integral of a focused polynomial:
/// sum_I alpha_I haf(Gram of the generators selected by I).
double integrate_gaussian(const FocusedPolynomial& poly, int max_size = kHafnianCap);

/// Gaussian integral of the monomial x^alpha: 0 unless all exponents are
/// even, otherwise prod_i 2^{a_i/2} Gamma((a_i+1)/2) / Gamma(1/2)
/// (= prod (a_i - 1)!!). Evaluated in log space.
double monomial_gaussian_integral(const std::vector<int>& alpha);

/// Conversion factor Gamma(n/2) / (2^{m/2} Gamma(n/2 + m/2)) between the
/// Gaussian integral over R^n and the sphere integral of a homogeneous
/// degree-m polynomial. Log-Gamma is used throughout so moderate n + m do
/// not overflow.
double sphere_factor(int n, int m);

/// Sphere integral from the Gaussian integral of a homogeneous degree-m
/// polynomial: gaussian_value * sphere_factor(n, m). Requires even m.
double sphere_from_gaussian(double gaussian_value, int n, int m);

}  // namespace subwick
