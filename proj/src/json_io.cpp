#include "subwick/json_io.hpp"

#include <fstream>
#include <string>

#include "subwick/errors.hpp"

namespace subwick {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(what + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

int int_from_json(const json& j, const std::string& what) {
    if (!j.is_number_integer()) {
        throw ValidationError(what + ": expected an integer");
    }
    return j.get<int>();
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + ": expected an array of reals");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<int>(i)) = real_from_json(j[i], what);
    }
    return v;
}

std::vector<Eigen::VectorXd> generators_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(what + ": expected a non-empty array of vectors");
    }
    std::vector<Eigen::VectorXd> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(vector_from_json(j[i], what + "[" + std::to_string(i + 1) + "]"));
    }
    return out;
}

std::vector<Term> terms_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(what + ": expected a non-empty array of terms");
    }
    std::vector<Term> out;
    out.reserve(j.size());
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string label = what + "[" + std::to_string(t + 1) + "]";
        const json& indices = require_field(j[t], "indices", label);
        if (!indices.is_array()) throw ValidationError(label + ": indices must be an array");
        Term term;
        term.indices.reserve(indices.size());
        for (const json& idx : indices) {
            // JSON carries 1-based indices
            term.indices.push_back(int_from_json(idx, label + ".indices") - 1);
        }
        term.weight = real_from_json(require_field(j[t], "weight", label), label + ".weight");
        out.push_back(std::move(term));
    }
    return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json generators_to_json(const std::vector<Eigen::VectorXd>& gens) {
    json out = json::array();
    for (const auto& g : gens) out.push_back(vector_to_json(g));
    return out;
}

json terms_to_json(const std::vector<Term>& terms) {
    json out = json::array();
    for (const Term& t : terms) {
        json indices = json::array();
        for (int idx : t.indices) indices.push_back(idx + 1);
        out.push_back(json{{"indices", indices}, {"weight", t.weight}});
    }
    return out;
}

}  // namespace

double real_from_json(const nlohmann::json& j, const std::string& context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(s, &consumed);
        } catch (const std::exception&) {
            throw ValidationError(context + ": cannot parse real from \"" + s + "\"");
        }
        if (consumed != s.size()) {
            throw ValidationError(context + ": trailing characters in real \"" + s + "\"");
        }
        return value;
    }
    throw ValidationError(context + ": expected a number or decimal string");
}

FocusedPolynomial poly_from_json(const nlohmann::json& j) {
    const int n = int_from_json(require_field(j, "n", "polynomial"), "polynomial.n");
    const int m = int_from_json(require_field(j, "m", "polynomial"), "polynomial.m");
    auto gens = generators_from_json(require_field(j, "generators", "polynomial"),
                                     "polynomial.generators");
    auto terms = terms_from_json(require_field(j, "terms", "polynomial"), "polynomial.terms");
    return FocusedPolynomial(n, m, std::move(gens), std::move(terms));
}

nlohmann::json poly_to_json(const FocusedPolynomial& poly) {
    return json{{"n", poly.ambient_dim()},
                {"m", poly.degree()},
                {"generators", generators_to_json(poly.generators())},
                {"terms", terms_to_json(poly.terms())}};
}

FocusedPair pair_from_json(const nlohmann::json& j) {
    const int n = int_from_json(require_field(j, "n", "pair"), "pair.n");
    const int m = int_from_json(require_field(j, "m", "pair"), "pair.m");
    auto a = generators_from_json(require_field(j, "a_generators", "pair"),
                                  "pair.a_generators");
    auto b = generators_from_json(require_field(j, "b_generators", "pair"),
                                  "pair.b_generators");
    auto f = terms_from_json(require_field(j, "f_terms", "pair"), "pair.f_terms");
    auto g = terms_from_json(require_field(j, "g_terms", "pair"), "pair.g_terms");
    return FocusedPair(n, m, std::move(a), std::move(b), std::move(f), std::move(g));
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const json& rows = (j.is_object() && j.contains("matrix")) ? j.at("matrix") : j;
    if (!rows.is_array() || rows.empty()) {
        throw ValidationError("matrix: expected a non-empty array of rows");
    }
    const std::size_t num_rows = rows.size();
    const std::size_t num_cols = rows[0].is_array() ? rows[0].size() : 0;
    if (num_cols == 0) throw ValidationError("matrix: rows must be non-empty arrays");
    Eigen::MatrixXd m(num_rows, num_cols);
    for (std::size_t i = 0; i < num_rows; ++i) {
        if (!rows[i].is_array() || rows[i].size() != num_cols) {
            throw ValidationError("matrix: row " + std::to_string(i + 1) +
                                  " has inconsistent length");
        }
        for (std::size_t c = 0; c < num_cols; ++c) {
            m(static_cast<int>(i), static_cast<int>(c)) =
                real_from_json(rows[i][c], "matrix entry");
        }
    }
    return m;
}

SymMatrix sym_matrix_from_json(const nlohmann::json& j) {
    return SymMatrix::from_dense(matrix_from_json(j));
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

PartitionInstance partition_from_json(const nlohmann::json& j) {
    PartitionInstance inst;
    const json& a = require_field(j, "a", "partition instance");
    if (!a.is_array() || a.empty()) {
        throw ValidationError("partition instance: \"a\" must be a non-empty array");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const json& row = a[i];
        if (!row.is_array()) {
            throw ValidationError("partition instance: a[" + std::to_string(i + 1) +
                                  "] must be an array of integers");
        }
        Eigen::VectorXi v(row.size());
        for (std::size_t d = 0; d < row.size(); ++d) {
            v(static_cast<int>(d)) = int_from_json(row[d], "partition instance a entry");
        }
        inst.a.push_back(std::move(v));
    }
    const json& b = require_field(j, "b", "partition instance");
    if (!b.is_array()) throw ValidationError("partition instance: \"b\" must be an array");
    inst.b.resize(b.size());
    for (std::size_t d = 0; d < b.size(); ++d) {
        inst.b(static_cast<int>(d)) = int_from_json(b[d], "partition instance b entry");
    }
    inst.m_cap = int_from_json(require_field(j, "M", "partition instance"),
                               "partition instance.M");
    inst.validate();
    return inst;
}

nlohmann::json seed_to_json(const RngSeed& seed) {
    return json{{"value", seed.value}, {"stream", seed.stream}};
}

nlohmann::json report_to_json(const EstimateReport& report) {
    return json{{"estimate", report.estimate}, {"per_trial", report.per_trial},
                {"k_used", report.k_used},     {"delta_used", report.delta_used},
                {"scaling", report.scaling},   {"seed", seed_to_json(report.seed)}};
}

nlohmann::json opt_report_to_json(const OptReport& report) {
    return json{{"max_estimate", report.max_estimate},
                {"argmax_ambient", vector_to_json(report.argmax_ambient)},
                {"k_used", report.k_used},
                {"per_restart", report.per_restart},
                {"converged", report.converged},
                {"delta_used", report.delta_used},
                {"scaling", report.scaling},
                {"seed", seed_to_json(report.seed)}};
}

nlohmann::json subspace_to_json(const Subspace& l) {
    return json{{"n", l.ambient_dim()}, {"k", l.dim()}, {"frame", matrix_to_json(l.frame())}};
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // e.what() carries the byte position of the failure
        throw ValidationError("JSON parse error in " + path + ": " + e.what());
    }
}

}  // namespace subwick
