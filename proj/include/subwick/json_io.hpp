#pragma once

#include <Eigen/Dense>
#include <string>

#include <json.hpp>

#include "subwick/complex_pairing.hpp"
#include "subwick/estimator.hpp"
#include "subwick/hafnian_approx.hpp"
#include "subwick/poly.hpp"
#include "subwick/sphere_opt.hpp"
#include "subwick/subspace.hpp"

namespace subwick {

// JSON schemas (all 1-based indices, reals accepted as numbers or decimal
// strings):
//   FocusedPolynomial  {"n":, "m":, "generators":[[..]..],
//                       "terms":[{"indices":[..], "weight":}..]}
//   FocusedPair        {"n":, "m":, "a_generators":.., "b_generators":..,
//                       "f_terms":.., "g_terms":..}
//   Matrix             row-major [[..]..], or {"matrix": [[..]..]}
//   PartitionInstance  {"a":[[..]..], "b":[..], "M":}

/// Accepts a JSON number or a decimal string such as "1.5e-3".
double real_from_json(const nlohmann::json& j, const std::string& context);

FocusedPolynomial poly_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const FocusedPolynomial& poly);

FocusedPair pair_from_json(const nlohmann::json& j);

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);
SymMatrix sym_matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

PartitionInstance partition_from_json(const nlohmann::json& j);

nlohmann::json seed_to_json(const RngSeed& seed);
nlohmann::json report_to_json(const EstimateReport& report);
nlohmann::json opt_report_to_json(const OptReport& report);
nlohmann::json subspace_to_json(const Subspace& l);

/// Parses a whole file; wraps stream failures and parse errors (with byte
/// positions) in ValidationError.
nlohmann::json load_json_file(const std::string& path);

}  // namespace subwick
