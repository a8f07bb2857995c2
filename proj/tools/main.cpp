// subwick command-line interface: JSON in, JSON out.
//
// Exit codes: 0 success, 2 validation/parse error, 3 cap exceeded or method
// not applicable, 64 usage error (unknown command, bad flags).

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "subwick/complex_pairing.hpp"
#include "subwick/errors.hpp"
#include "subwick/estimator.hpp"
#include "subwick/gaussian.hpp"
#include "subwick/hafnian_approx.hpp"
#include "subwick/json_io.hpp"
#include "subwick/matching.hpp"
#include "subwick/poly.hpp"
#include "subwick/rng.hpp"
#include "subwick/sphere_opt.hpp"
#include "subwick/subspace.hpp"
#include "subwick/version.hpp"

namespace {

using nlohmann::json;
using namespace subwick;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNotApplicable = 3;
constexpr int kExitUsage = 64;

json make_manifest(const std::string& command, json config,
                   const std::optional<RngSeed>& seed) {
    json manifest{{"command", command},
                  {"config", std::move(config)},
                  {"version", kVersion}};
    manifest["seed"] = seed ? seed_to_json(*seed) : json(nullptr);
    return manifest;
}

// stdout carries the artifact; an optional --output file receives the same bytes
void emit(const json& payload, const std::string& output_path) {
    const std::string text = payload.dump(2) + "\n";
    std::cout << text;
    if (!output_path.empty()) {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw ValidationError("cannot open output file: " + output_path);
        out << text;
    }
}

struct SeedFlags {
    std::uint64_t value = 0;
    std::uint64_t stream = 0;
    bool provided = false;

    RngSeed require(const std::string& command) const {
        if (!provided) {
            throw CLI::RequiredError("--seed (randomized " + command +
                                     " runs take no wall-clock seed)");
        }
        return RngSeed{value, stream};
    }
};

void add_seed_flags(CLI::App* cmd, SeedFlags& seed) {
    cmd->add_option("--seed", seed.value, "RNG seed (required for randomized runs)")
        ->each([&seed](const std::string&) { seed.provided = true; });
    cmd->add_option("--stream", seed.stream, "RNG stream id (default 0)");
}

json report_payload(const std::string& command, json config,
                    const std::optional<RngSeed>& seed) {
    return json{{"schema", 1}, {"manifest", make_manifest(command, std::move(config), seed)}};
}

int run(int argc, char** argv) {
    CLI::App app{"integration and optimization of focused polynomials by exact Wick "
                 "computation and restriction onto a random subspace"};
    app.require_subcommand(1);

    std::string input_path, output_path;

    // ---------------------------------------------------------------- integrate
    auto* integrate = app.add_subcommand(
        "integrate", "integral of a focused polynomial (Gaussian or sphere measure)");
    bool int_exact = false, int_randomized = false;
    std::string measure = "gaussian";
    EstimatorConfig int_cfg;
    SeedFlags int_seed;
    int int_k_override = 0;
    integrate->add_flag("--exact", int_exact, "exact Wick-formula integration");
    integrate->add_flag("--randomized", int_randomized, "random-subspace estimator");
    integrate->add_option("--measure", measure, "gaussian | sphere")
        ->check(CLI::IsMember({"gaussian", "sphere"}));
    integrate->add_option("--input", input_path, "polynomial JSON file")->required();
    integrate->add_option("--output", output_path, "also write the report here");
    integrate->add_option("--eps", int_cfg.epsilon, "bracket parameter in (0,1)");
    integrate->add_option("--gamma", int_cfg.gamma, "dimension-bound multiplier");
    integrate->add_option("--trials", int_cfg.trials, "odd number of median trials");
    integrate->add_option("--k-override", int_k_override, "fix the subspace dimension");
    add_seed_flags(integrate, int_seed);
    integrate->callback([&] {
        if (int_exact == int_randomized) {
            throw CLI::ValidationError("integrate",
                                       "pass exactly one of --exact / --randomized");
        }
        const FocusedPolynomial poly = poly_from_json(load_json_file(input_path));
        json config{{"measure", measure}, {"input", input_path}};
        if (int_exact) {
            double value = integrate_gaussian(poly);
            if (measure == "sphere") {
                value = (poly.degree() % 2 != 0)
                            ? 0.0
                            : sphere_from_gaussian(value, poly.ambient_dim(), poly.degree());
            }
            config["mode"] = "exact";
            json payload = report_payload("integrate", config, std::nullopt);
            payload["measure"] = measure;
            payload["value"] = value;
            emit(payload, output_path);
            return;
        }
        int_cfg.seed = int_seed.require("integrate");
        if (int_k_override > 0) int_cfg.k_override = int_k_override;
        config["mode"] = "randomized";
        config["eps"] = int_cfg.epsilon;
        config["gamma"] = int_cfg.gamma;
        config["trials"] = int_cfg.trials;
        if (int_cfg.k_override) config["k_override"] = *int_cfg.k_override;
        const EstimateReport report = (measure == "sphere")
                                          ? estimate_sphere_integral(poly, int_cfg)
                                          : estimate_gaussian_integral(poly, int_cfg);
        json payload = report_payload("integrate", config, int_cfg.seed);
        payload["measure"] = measure;
        payload["report"] = report_to_json(report);
        emit(payload, output_path);
    });

    // ----------------------------------------------------------------- maximize
    auto* maximize = app.add_subcommand(
        "maximize", "approximate max of a focused polynomial on the unit sphere");
    OptConfig opt_cfg;
    SeedFlags opt_seed;
    int opt_k_override = 0;
    maximize->add_option("--input", input_path, "polynomial JSON file")->required();
    maximize->add_option("--output", output_path, "also write the report here");
    maximize->add_option("--eps", opt_cfg.epsilon, "bracket parameter in (0,1)");
    maximize->add_option("--gamma", opt_cfg.gamma, "dimension-bound multiplier");
    maximize->add_option("--restarts", opt_cfg.restarts, "local-search restarts");
    maximize->add_option("--max-iters", opt_cfg.max_iters, "ascent iteration cap");
    maximize->add_option("--k-override", opt_k_override, "fix the subspace dimension");
    add_seed_flags(maximize, opt_seed);
    maximize->callback([&] {
        const FocusedPolynomial poly = poly_from_json(load_json_file(input_path));
        opt_cfg.seed = opt_seed.require("maximize");
        if (opt_k_override > 0) opt_cfg.k_override = opt_k_override;
        json config{{"input", input_path},
                    {"eps", opt_cfg.epsilon},
                    {"gamma", opt_cfg.gamma},
                    {"restarts", opt_cfg.restarts},
                    {"max_iters", opt_cfg.max_iters}};
        if (opt_cfg.k_override) config["k_override"] = *opt_cfg.k_override;
        const OptReport report = maximize_on_sphere(poly, opt_cfg);
        json payload = report_payload("maximize", config, opt_cfg.seed);
        payload["report"] = opt_report_to_json(report);
        emit(payload, output_path);
    });

    // --------------------------------------------------------------- haf / per
    auto* haf_cmd = app.add_subcommand("haf", "exact hafnian of a symmetric matrix");
    haf_cmd->add_option("--input", input_path, "matrix JSON file")->required();
    haf_cmd->add_option("--output", output_path, "also write the report here");
    int haf_cap = kHafnianCap;
    haf_cmd->add_option("--max-m", haf_cap, "matrix order cap");
    haf_cmd->callback([&] {
        const SymMatrix c = sym_matrix_from_json(load_json_file(input_path));
        json payload = report_payload("haf", json{{"input", input_path}}, std::nullopt);
        payload["value"] = hafnian(c, haf_cap);
        emit(payload, output_path);
    });

    auto* per_cmd = app.add_subcommand("per", "exact permanent of a square matrix");
    per_cmd->add_option("--input", input_path, "matrix JSON file")->required();
    per_cmd->add_option("--output", output_path, "also write the report here");
    int per_cap = kPermanentCap;
    per_cmd->add_option("--max-m", per_cap, "matrix order cap");
    per_cmd->callback([&] {
        const Eigen::MatrixXd c = matrix_from_json(load_json_file(input_path));
        json payload = report_payload("per", json{{"input", input_path}}, std::nullopt);
        payload["value"] = permanent(c, per_cap);
        emit(payload, output_path);
    });

    // ------------------------------------------------------------------ hafnian
    auto* hafnian_cmd = app.add_subcommand(
        "hafnian", "hafnian of a positive matrix: exact or randomized approximation");
    bool hf_exact = false, hf_approx = false;
    std::string shift = "min-eig";
    EstimatorConfig hf_cfg;
    SeedFlags hf_seed;
    int hf_k_override = 0;
    hafnian_cmd->add_flag("--exact", hf_exact, "exact matching sum (small m)");
    hafnian_cmd->add_flag("--approx", hf_approx, "randomized subspace approximation");
    hafnian_cmd->add_option("--input", input_path, "matrix JSON file")->required();
    hafnian_cmd->add_option("--output", output_path, "also write the report here");
    hafnian_cmd->add_option("--shift", shift,
                            "diagonal policy: min-eig | psd | <numeric lambda>");
    hafnian_cmd->add_option("--eps", hf_cfg.epsilon, "bracket parameter in (0,1)");
    hafnian_cmd->add_option("--gamma", hf_cfg.gamma, "dimension-bound multiplier");
    hafnian_cmd->add_option("--trials", hf_cfg.trials, "odd number of median trials");
    hafnian_cmd->add_option("--k-override", hf_k_override, "fix the subspace dimension");
    add_seed_flags(hafnian_cmd, hf_seed);
    hafnian_cmd->callback([&] {
        if (hf_exact == hf_approx) {
            throw CLI::ValidationError("hafnian", "pass exactly one of --exact / --approx");
        }
        if (hf_exact) {
            const SymMatrix c = sym_matrix_from_json(load_json_file(input_path));
            json payload = report_payload(
                "hafnian", json{{"input", input_path}, {"mode", "exact"}}, std::nullopt);
            payload["value"] = hafnian(c);
            emit(payload, output_path);
            return;
        }
        ShiftPolicy policy = ShiftPolicy::MinEigShift;
        double lambda = 0.0;
        if (shift == "psd") {
            policy = ShiftPolicy::PsdAsGiven;
        } else if (shift != "min-eig") {
            try {
                std::size_t used = 0;
                lambda = std::stod(shift, &used);
                if (used != shift.size()) throw std::invalid_argument(shift);
            } catch (const std::exception&) {
                throw CLI::ValidationError("hafnian",
                                           "--shift must be min-eig, psd, or a number");
            }
            policy = ShiftPolicy::Explicit;
        }
        hf_cfg.seed = hf_seed.require("hafnian");
        if (hf_k_override > 0) hf_cfg.k_override = hf_k_override;
        const HafnianInstance inst(sym_matrix_from_json(load_json_file(input_path)),
                                   policy, lambda);
        const HafnianApproxResult result = approx_hafnian(inst, hf_cfg);
        json config{{"input", input_path}, {"mode", "approx"},   {"shift", shift},
                    {"eps", hf_cfg.epsilon}, {"gamma", hf_cfg.gamma},
                    {"trials", hf_cfg.trials}};
        if (hf_cfg.k_override) config["k_override"] = *hf_cfg.k_override;
        json payload = report_payload("hafnian", config, hf_cfg.seed);
        payload["report"] = report_to_json(result.report);
        payload["delta"] = result.delta;
        payload["lambda"] = result.lambda ? json(*result.lambda) : json(nullptr);
        emit(payload, output_path);
    });

    // --------------------------------------------------------------------- pair
    auto* pair_cmd = app.add_subcommand(
        "pair", "scalar product of a focused pair over the complex Gaussian measure");
    bool pr_exact = false, pr_randomized = false;
    EstimatorConfig pr_cfg;
    SeedFlags pr_seed;
    int pr_k_override = 0;
    pair_cmd->add_flag("--exact", pr_exact, "exact permanent-based pairing");
    pair_cmd->add_flag("--randomized", pr_randomized, "random-subspace estimator");
    pair_cmd->add_option("--input", input_path, "pair JSON file")->required();
    pair_cmd->add_option("--output", output_path, "also write the report here");
    pair_cmd->add_option("--eps", pr_cfg.epsilon, "bracket parameter in (0,1)");
    pair_cmd->add_option("--gamma", pr_cfg.gamma, "dimension-bound multiplier");
    pair_cmd->add_option("--trials", pr_cfg.trials, "odd number of median trials");
    pair_cmd->add_option("--k-override", pr_k_override, "fix the subspace dimension");
    add_seed_flags(pair_cmd, pr_seed);
    pair_cmd->callback([&] {
        if (pr_exact == pr_randomized) {
            throw CLI::ValidationError("pair", "pass exactly one of --exact / --randomized");
        }
        const FocusedPair pair = pair_from_json(load_json_file(input_path));
        if (pr_exact) {
            json payload = report_payload(
                "pair", json{{"input", input_path}, {"mode", "exact"}}, std::nullopt);
            payload["value"] = pairing_exact_permanent(pair);
            emit(payload, output_path);
            return;
        }
        pr_cfg.seed = pr_seed.require("pair");
        if (pr_k_override > 0) pr_cfg.k_override = pr_k_override;
        json config{{"input", input_path}, {"mode", "randomized"},
                    {"eps", pr_cfg.epsilon}, {"gamma", pr_cfg.gamma},
                    {"trials", pr_cfg.trials}};
        if (pr_cfg.k_override) config["k_override"] = *pr_cfg.k_override;
        const EstimateReport report = pairing_randomized(pair, pr_cfg);
        json payload = report_payload("pair", config, pr_cfg.seed);
        payload["report"] = report_to_json(report);
        emit(payload, output_path);
    });

    // --------------------------------------------------------------- vpartition
    auto* vpartition = app.add_subcommand(
        "vpartition", "vector partition count via the monomial scalar product");
    vpartition->add_option("--input", input_path, "instance JSON file")->required();
    vpartition->add_option("--output", output_path, "also write the report here");
    vpartition->callback([&] {
        const PartitionInstance inst = partition_from_json(load_json_file(input_path));
        json payload =
            report_payload("vpartition", json{{"input", input_path}}, std::nullopt);
        payload["count"] = vector_partition_demo(inst);
        emit(payload, output_path);
    });

    // ----------------------------------------------------------- sample-subspace
    auto* sample_cmd =
        app.add_subcommand("sample-subspace", "Haar-random subspace frame (diagnostics)");
    int ss_n = 0, ss_k = 0;
    SeedFlags ss_seed;
    sample_cmd->add_option("--n", ss_n, "ambient dimension")->required();
    sample_cmd->add_option("--k", ss_k, "subspace dimension")->required();
    sample_cmd->add_option("--output", output_path, "also write the frame here");
    add_seed_flags(sample_cmd, ss_seed);
    sample_cmd->callback([&] {
        const RngSeed seed = ss_seed.require("sample-subspace");
        const Subspace l = sample_subspace(ss_n, ss_k, seed);
        json payload =
            report_payload("sample-subspace", json{{"n", ss_n}, {"k", ss_k}}, seed);
        payload["subspace"] = subspace_to_json(l);
        emit(payload, output_path);
    });

    // ---------------------------------------------------------------- benchmark
    auto* benchmark = app.add_subcommand(
        "benchmark", "needle polynomial x1^{2k}: Monte Carlo vs subspace estimator");
    int bm_n = 20, bm_k_power = 3;
    long long bm_samples = 100000;
    EstimatorConfig bm_cfg;
    SeedFlags bm_seed;
    int bm_k_override = 0;
    benchmark->add_option("--n", bm_n, "ambient dimension")->required();
    benchmark->add_option("--k-power", bm_k_power, "exponent half-degree k in x1^{2k}")
        ->required();
    benchmark->add_option("--mc-samples", bm_samples, "Monte Carlo sample count")
        ->required();
    benchmark->add_option("--output", output_path, "also write the table here");
    benchmark->add_option("--eps", bm_cfg.epsilon, "bracket parameter in (0,1)");
    benchmark->add_option("--gamma", bm_cfg.gamma, "dimension-bound multiplier");
    benchmark->add_option("--trials", bm_cfg.trials, "odd number of median trials");
    benchmark->add_option("--k-override", bm_k_override, "fix the subspace dimension");
    add_seed_flags(benchmark, bm_seed);
    benchmark->callback([&] {
        if (bm_n < 1 || bm_k_power < 0 || 2 * bm_k_power > kHafnianCap) {
            throw CLI::ValidationError("benchmark",
                                       "need n >= 1 and 0 <= k-power <= " +
                                           std::to_string(kHafnianCap / 2));
        }
        if (bm_samples < 1) {
            throw CLI::ValidationError("benchmark", "--mc-samples must be >= 1");
        }
        bm_cfg.seed = bm_seed.require("benchmark");
        if (bm_k_override > 0) bm_cfg.k_override = bm_k_override;
        const int degree = 2 * bm_k_power;

        // (a) closed form  Gamma(n/2) Gamma(1/2+k) / (sqrt(pi) Gamma(n/2+k))
        const double exact =
            std::exp(std::lgamma(0.5 * bm_n) + std::lgamma(0.5 + bm_k_power) -
                     0.5 * std::log(std::numbers::pi) -
                     std::lgamma(0.5 * bm_n + bm_k_power));

        // (b) plain Monte Carlo on the sphere
        CounterRng mc_rng(bm_cfg.seed.substream(0x4d43ULL));  // "MC" domain
        double mc_mean = 0.0;
        Eigen::VectorXd x(bm_n);
        for (long long s = 0; s < bm_samples; ++s) {
            double norm = 0.0;
            do {
                for (int i = 0; i < bm_n; ++i) x(i) = mc_rng.next_gaussian();
                norm = x.norm();
            } while (!(norm > 0.0));
            mc_mean += std::pow(x(0) / norm, degree);
        }
        mc_mean /= static_cast<double>(bm_samples);

        // (c) subspace estimator (degree 0 is the constant 1: both sides exact)
        double subspace_estimate = 1.0;
        int k_used = bm_n;
        if (degree > 0) {
            const FocusedPolynomial needle(bm_n, degree, {Eigen::VectorXd::Unit(bm_n, 0)},
                                           {Term{std::vector<int>(degree, 0), 1.0}});
            const EstimateReport report = estimate_sphere_integral(needle, bm_cfg);
            subspace_estimate = report.estimate;
            k_used = report.k_used;
        }

        json config{{"n", bm_n},
                    {"k_power", bm_k_power},
                    {"mc_samples", bm_samples},
                    {"eps", bm_cfg.epsilon},
                    {"gamma", bm_cfg.gamma},
                    {"trials", bm_cfg.trials}};
        if (bm_cfg.k_override) config["k_override"] = *bm_cfg.k_override;
        json payload = report_payload("benchmark", config, bm_cfg.seed);
        payload["exact"] = exact;
        payload["monte_carlo"] = json{{"estimate", mc_mean},
                                      {"rel_error", std::abs(mc_mean - exact) / exact},
                                      {"samples", bm_samples}};
        payload["subspace"] =
            json{{"estimate", subspace_estimate},
                 {"rel_error", std::abs(subspace_estimate - exact) / exact},
                 {"k_used", k_used},
                 {"trials", bm_cfg.trials}};
        emit(payload, output_path);
    });

    const auto start = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return kExitUsage;
    }
    // wall-clock duration goes to stderr so reports stay byte-identical per seed
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << app.get_subcommands().front()->get_name() << ": completed in "
              << elapsed.count() << " s\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotApplicable;
    } catch (const NotApplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotApplicable;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
