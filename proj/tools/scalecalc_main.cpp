#include "scalecalc/errors.hpp"
#include "scalecalc/fourier.hpp"
#include "scalecalc/growth.hpp"
#include "scalecalc/model_spec.hpp"
#include "scalecalc/scale_space.hpp"
#include "scalecalc/serialize.hpp"
#include "scalecalc/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace scalecalc;
using nlohmann::json;

namespace {

// Machine output promises 12 significant digits; rounding JSON numbers through
// the same text form keeps the two formats consistent.
double round12(double v) { return std::strtod(format_double(v).c_str(), nullptr); }

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SCALECALC_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) return v;
    }
    return 12345;  // fixed default keeps runs reproducible
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return 0;
    }
    std::ofstream file(path);
    if (!file) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 2;
    }
    fn(file);
    return 0;
}

struct Check {
    std::string name;
    std::string measured;
    std::string bound;
    bool passed = true;
};

struct SuiteReport {
    std::string suite;
    std::optional<std::uint64_t> seed;
    std::vector<Check> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

void emit_suite(std::ostream& os, const SuiteReport& r, const std::string& format) {
    if (format == "json") {
        json checks = json::array();
        for (const auto& c : r.checks)
            checks.push_back(json{{"name", c.name},
                                  {"measured", c.measured},
                                  {"bound", c.bound},
                                  {"passed", c.passed}});
        json j{{"suite", r.suite}, {"passed", r.passed()}, {"checks", std::move(checks)}};
        if (r.seed) j["seed"] = *r.seed;
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "check,measured,bound,status\n";
        for (const auto& c : r.checks)
            os << c.name << ',' << c.measured << ',' << c.bound << ','
               << (c.passed ? "pass" : "fail") << '\n';
    } else {
        os << "suite " << r.suite;
        if (r.seed) os << " (seed " << *r.seed << ")";
        os << "\n";
        for (const auto& c : r.checks)
            os << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << ": "
               << c.measured << "  (" << c.bound << ")\n";
        os << (r.passed() ? "all checks passed\n" : "failures present\n");
    }
}

// ---- spectrum ----

void emit_spectrum(std::ostream& os, const ManifoldModel& model, const Spectrum& s,
                   const std::string& format) {
    if (format == "csv") {
        write_spectrum_csv(os, s);
    } else if (format == "json") {
        json levels = json::array();
        for (const auto& e : s.entries())
            levels.push_back(json::array({round12(e.eigenvalue), e.multiplicity}));
        os << json{{"model", model.name()}, {"count", s.size()}, {"levels", std::move(levels)}}
                  .dump(2)
           << "\n";
    } else {
        os << "spectrum of " << model.name() << " (" << s.size() << " eigenvalues)\n";
        os << "rank  eigenvalue        mult\n";
        std::size_t rank = 1;
        char line[96];
        for (const auto& e : s.entries())
            for (std::size_t i = 0; i < e.multiplicity; ++i, ++rank) {
                std::snprintf(line, sizeof(line), "%4zu  %-16.10g  %zu\n", rank,
                              e.eigenvalue, e.multiplicity);
                os << line;
            }
    }
}

// ---- invariant table ----

void emit_invariant(std::ostream& os, const std::string& model_spec, const InvariantTable& table,
                    const std::string& format) {
    if (format == "json") {
        os << invariant_table_to_json(table).dump(2) << "\n";
    } else if (format == "csv") {
        os << "i,j,exponent\n";
        for (unsigned i = 0; i < table.j_max(); ++i)
            for (unsigned j = i + 1; j <= table.j_max(); ++j)
                os << i << ',' << j << ',' << format_double(table.at(i, j).class_exponent())
                   << '\n';
    } else {
        os << "relative inclusion classes for " << model_spec << " (levels 0.." << table.j_max()
           << ")\n";
        os << "  i  j  exponent\n";
        char line[64];
        for (unsigned i = 0; i < table.j_max(); ++i)
            for (unsigned j = i + 1; j <= table.j_max(); ++j) {
                std::snprintf(line, sizeof(line), "%3u %3u  %.6g\n", i, j,
                              table.at(i, j).class_exponent());
                os << line;
            }
    }
}

// ---- verify suites ----

SuiteReport run_gram_suite(std::size_t mode_count, unsigned k_max) {
    SuiteReport report;
    report.suite = "gram";
    std::vector<std::size_t> modes(mode_count);
    for (std::size_t i = 0; i < mode_count; ++i) modes[i] = i + 1;
    for (unsigned k = 0; k <= k_max; ++k) {
        const auto gram = gram_matrix(modes, k);
        double off = 0.0, diag = 0.0;
        for (std::size_t a = 0; a < modes.size(); ++a) {
            for (std::size_t b = 0; b < modes.size(); ++b) {
                if (a == b) continue;
                off = std::max(off, std::fabs(gram[a][b]));
            }
            const double expected = weight_sum(circle_mode_eigenvalue(modes[a]), k);
            diag = std::max(diag, std::fabs(gram[a][a] - expected) / expected);
        }
        report.checks.push_back({"k=" + std::to_string(k) + " off-diagonal max",
                                 format_double(off), "< 1e-10", off < 1e-10});
        report.checks.push_back({"k=" + std::to_string(k) + " diagonal relative error",
                                 format_double(diag), "< 1e-08", diag < 1e-8});
    }
    return report;
}

SuiteReport run_weyl_suite(const std::string& model_spec, std::size_t count,
                           double tail_fraction, double tolerance) {
    SuiteReport report;
    report.suite = "weyl";
    const ManifoldModel model = parse_manifold_model(model_spec);
    const Spectrum s = enumerate_spectrum(model, count);
    const WeylFit fit = weyl_fit(s, tail_fraction);
    const double expected = expected_weyl_exponent(model);
    const double err = std::fabs(fit.exponent - expected);
    report.checks.push_back({"fitted eigenvalue exponent for " + model.name(),
                             format_double(fit.exponent),
                             format_double(expected) + " +/- " + format_double(tolerance),
                             err <= tolerance});
    return report;
}

SuiteReport run_star_suite(std::size_t trials, std::size_t prefix, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "star";
    report.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> exp_dist(0.5, 3.0);
    std::uniform_real_distribution<double> coef_dist(0.5, 2.0);
    std::uniform_real_distribution<double> factor_dist(1.1, 3.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    std::size_t failures = 0;
    std::optional<Check> first_failure;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const GrowthFunction f = GrowthFunction::power_law(coef_dist(rng), exp_dist(rng));
        const GrowthFunction h = GrowthFunction::power_law(coef_dist(rng), exp_dist(rng));
        const double c = factor_dist(rng);
        const double log_c = std::log(c);

        // nondecreasing perturbation of f staying inside the factor-c envelope
        std::vector<double> perturbed(prefix);
        double prev = 0.0;
        for (std::size_t mu = 1; mu <= prefix; ++mu) {
            const double v = f(mu) * std::exp(unit(rng) * log_c);
            prev = std::max(prev, v);
            perturbed[mu - 1] = prev;
        }
        const GrowthFunction f_prime =
            GrowthFunction::explicit_prefix(std::move(perturbed), {}, true);

        const MergePrefix merged = merge_growth_prefix(f, h, prefix);
        const MergePrefix merged_prime = merge_growth_prefix(f_prime, h, prefix);
        const double c_eff = c * (1.0 + 1e-12);
        for (std::size_t i = 0; i < prefix; ++i) {
            const double a = merged.values[i];
            const double b = merged_prime.values[i];
            if (b > a * c_eff || b < a / c_eff) {
                ++failures;
                if (!first_failure)
                    first_failure = Check{
                        "first counterexample trial " + std::to_string(trial) + " index " +
                            std::to_string(i + 1),
                        format_double(b) + " vs " + format_double(a),
                        "within factor " + format_double(c), false};
                break;
            }
        }
    }
    if (first_failure) report.checks.push_back(*first_failure);
    report.checks.push_back({"perturbed merges within the shared constant",
                             std::to_string(trials - failures) + "/" + std::to_string(trials),
                             "zero failures", failures == 0});
    return report;
}

SuiteReport run_idempotent_suite(std::size_t horizon, std::optional<unsigned> only_k) {
    SuiteReport report;
    report.suite = "idempotent";
    std::vector<unsigned> ks = only_k ? std::vector<unsigned>{*only_k}
                                      : std::vector<unsigned>{1, 2, 3};
    for (unsigned k : ks) {
        const GrowthFunction f = GrowthFunction::power_law(1.0, static_cast<double>(k));
        const IdempotencyReport idem = idempotency_check(f, horizon);
        report.checks.push_back({"k=" + std::to_string(k) + " two-sided bounds to " +
                                     std::to_string(horizon),
                                 idem.passed ? "no violations"
                                             : std::to_string(idem.violations.size()) +
                                                   " violations",
                                 "(1/2)^k f <= f*f <= 2^k f", idem.passed});

        const MergePrefix merged = merge_growth_prefix(f, f, horizon);
        std::size_t mismatches = 0;
        for (std::size_t mu = 1; mu <= horizon; ++mu) {
            const double expected =
                pow_unsigned(static_cast<double>((mu - 1) / 2 + 1), k);
            if (merged.values[mu - 1] != expected) ++mismatches;
        }
        report.checks.push_back({"k=" + std::to_string(k) + " halved-index identity",
                                 std::to_string(horizon - mismatches) + "/" +
                                     std::to_string(horizon) + " exact",
                                 "bitwise equality", mismatches == 0});
    }
    return report;
}

SuiteReport run_productB_suite(unsigned n1, unsigned n2, std::size_t count,
                               double tolerance) {
    SuiteReport report;
    report.suite = "productB";
    const FractalModel left = mapping_space_model(n1);
    const FractalModel right = mapping_space_model(n2);
    const double expected = std::min(2.0 / n1, 2.0 / n2);

    const ScaleProduct product = scale_product(left, right, count);
    const double symbolic = product.product_class.class_exponent();
    report.checks.push_back({"product class exponent",
                             format_double(symbolic), format_double(expected),
                             symbolic == expected});

    const GrowthClass fitted = classify(merge_growth(left.growth, right.growth, count), count);
    const double err = std::fabs(fitted.class_exponent() - expected);
    report.checks.push_back({"fitted exponent of the materialized merge",
                             format_double(fitted.class_exponent()),
                             format_double(expected) + " +/- " + format_double(tolerance),
                             err <= tolerance});
    return report;
}

SuiteReport run_bounds_suite(std::size_t mode_count) {
    SuiteReport report;
    report.suite = "bounds";
    for (unsigned k0 = 1; k0 <= 3; ++k0) {
        bool ok = true;
        double worst = 1.0;
        std::size_t checked = 0;
        for (std::size_t mu = 1; mu <= mode_count; ++mu) {
            const double lambda = circle_mode_eigenvalue(mu);
            if (lambda < 1.0) continue;
            ++checked;
            const double lambda_k = pow_unsigned(lambda, k0);
            const double sum = weight_sum(lambda, k0);
            if (!(lambda_k <= sum && sum <= (1.0 + k0) * lambda_k)) ok = false;
            worst = std::max(worst, sum / lambda_k);
        }
        report.checks.push_back({"k0=" + std::to_string(k0) + " weight-sum bound on " +
                                     std::to_string(checked) + " modes",
                                 "max ratio " + format_double(worst),
                                 "within [1; 1+k0]", ok});
    }
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth-function algebra and scale-space calculator"};
    app.require_subcommand(1);

    std::string model_spec, spec_left, spec_right;
    std::string format = "table";
    std::string output_path;
    std::string suite;
    std::size_t count = 100;
    std::size_t verify_count = 10000;
    std::size_t prefix = 1000;
    std::size_t classify_prefix = 10000;
    std::size_t trials = 200;
    std::size_t horizon = 100000;
    std::size_t modes = 32;
    unsigned j_max = 4;
    unsigned k_levels = 3;
    unsigned n1 = 1, n2 = 2;
    double tail_fraction = 0.5;
    double tolerance = 0.05;
    std::optional<std::uint64_t> seed_flag;
    std::optional<unsigned> only_k;

    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "table, csv or json")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        cmd->add_option("--output", output_path, "write to a file instead of stdout");
    };

    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "enumerate the eigenvalues of a model geometry");
    spectrum_cmd->add_option("model", model_spec, "model spec, e.g. circle or torus:2")
        ->required();
    spectrum_cmd->add_option("--count", count, "eigenvalues to enumerate")
        ->check(CLI::PositiveNumber);
    add_format(spectrum_cmd);

    CLI::App* invariant_cmd =
        app.add_subcommand("invariant", "table of relative inclusion classes");
    invariant_cmd->add_option("model", model_spec, "model spec, e.g. map:n=2")->required();
    invariant_cmd->add_option("--jmax", j_max, "deepest level of the table")
        ->check(CLI::Range(1u, 16u));
    invariant_cmd->add_option("--prefix", classify_prefix, "classification prefix length")
        ->check(CLI::PositiveNumber);
    add_format(invariant_cmd);

    CLI::App* isom_cmd =
        app.add_subcommand("isom", "decide local isomorphism of two models");
    isom_cmd->add_option("left", spec_left, "first model spec")->required();
    isom_cmd->add_option("right", spec_right, "second model spec")->required();
    isom_cmd->add_option("--prefix", classify_prefix, "classification prefix length")
        ->check(CLI::PositiveNumber);
    add_format(isom_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd
        ->add_option("suite", suite,
                     "one of gram, weyl, star, idempotent, productB, bounds")
        ->required()
        ->check(CLI::IsMember({"gram", "weyl", "star", "idempotent", "productB", "bounds"}));
    verify_cmd->add_option("--model", model_spec, "model spec for the weyl suite");
    verify_cmd->add_option("--count", verify_count, "eigenvalues / merge length")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--tail", tail_fraction, "tail fraction for fits")
        ->check(CLI::Range(0.0, 1.0));
    verify_cmd->add_option("--tolerance", tolerance, "acceptance tolerance")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--modes", modes, "number of leading modes")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--k", k_levels, "deepest level for the gram suite");
    verify_cmd->add_option("--only-k", only_k, "restrict the idempotent suite to one exponent");
    verify_cmd->add_option("--trials", trials, "trials for the star suite")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--prefix", prefix, "prefix length for the star suite")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--horizon", horizon, "horizon for the idempotent suite")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--n1", n1, "left domain dimension for productB");
    verify_cmd->add_option("--n2", n2, "right domain dimension for productB");
    verify_cmd->add_option("--seed", seed_flag, "rng seed for property suites");
    add_format(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum_cmd->parsed()) {
            const ManifoldModel model = parse_manifold_model(model_spec);
            const Spectrum s = enumerate_spectrum(model, count);
            return with_output(output_path,
                               [&](std::ostream& os) { emit_spectrum(os, model, s, format); });
        }

        if (invariant_cmd->parsed()) {
            const FractalModel model = parse_fractal_model(model_spec, classify_prefix);
            const InvariantTable table = invariant_table(model, j_max, classify_prefix);
            return with_output(output_path, [&](std::ostream& os) {
                emit_invariant(os, model_spec, table, format);
            });
        }

        if (isom_cmd->parsed()) {
            const FractalModel left = parse_fractal_model(spec_left, classify_prefix);
            const FractalModel right = parse_fractal_model(spec_right, classify_prefix);
            const IsomorphismVerdict verdict = locally_isomorphic(left, right, classify_prefix);
            const int rc = with_output(output_path, [&](std::ostream& os) {
                const char* word =
                    verdict.decision == IsomorphismDecision::Isomorphic ? "isomorphic"
                    : verdict.decision == IsomorphismDecision::NotIsomorphic
                        ? "not-isomorphic"
                        : "undecided";
                if (format == "json") {
                    json j{{"decision", word}, {"certificate", verdict.certificate}};
                    j["left_exponent"] = verdict.left_class
                                             ? json(round12(verdict.left_class->class_exponent()))
                                             : json(nullptr);
                    j["right_exponent"] =
                        verdict.right_class
                            ? json(round12(verdict.right_class->class_exponent()))
                            : json(nullptr);
                    os << j.dump(2) << "\n";
                } else if (format == "csv") {
                    os << "decision,left_exponent,right_exponent,certificate\n";
                    os << word << ','
                       << (verdict.left_class
                               ? format_double(verdict.left_class->class_exponent())
                               : std::string{})
                       << ','
                       << (verdict.right_class
                               ? format_double(verdict.right_class->class_exponent())
                               : std::string{})
                       << ",\"" << verdict.certificate << "\"\n";
                } else {
                    os << spec_left << "  vs  " << spec_right << "\n";
                    os << "verdict: " << word << "\n";
                    os << "certificate: " << verdict.certificate << "\n";
                }
            });
            if (rc != 0) return rc;
            return verdict.decision == IsomorphismDecision::Isomorphic ? 0 : 1;
        }

        if (verify_cmd->parsed()) {
            SuiteReport report;
            if (suite == "gram") {
                report = run_gram_suite(modes, k_levels);
            } else if (suite == "weyl") {
                if (model_spec.empty()) model_spec = "circle";
                report = run_weyl_suite(model_spec, verify_count, tail_fraction, tolerance);
            } else if (suite == "star") {
                report = run_star_suite(trials, prefix, resolve_seed(seed_flag));
            } else if (suite == "idempotent") {
                report = run_idempotent_suite(horizon, only_k);
            } else if (suite == "productB") {
                if (n1 == 0 || n2 == 0)
                    throw std::invalid_argument("domain dimensions must be positive");
                const std::size_t merge_count =
                    verify_cmd->count("--count") > 0 ? verify_count : 4096;
                report = run_productB_suite(n1, n2, merge_count, tolerance);
            } else {
                const std::size_t bound_modes =
                    verify_cmd->count("--modes") > 0 ? modes : 200;
                report = run_bounds_suite(bound_modes);
            }
            const int rc = with_output(
                output_path, [&](std::ostream& os) { emit_suite(os, report, format); });
            if (rc != 0) return rc;
            return report.passed() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
