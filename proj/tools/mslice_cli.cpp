#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "mslice/convex_distance.hpp"
#include "mslice/experiment.hpp"
#include "mslice/functional.hpp"
#include "mslice/io.hpp"
#include "mslice/multislice.hpp"
#include "mslice/random.hpp"
#include "mslice/tail_bounds.hpp"
#include "mslice/tensor_norms.hpp"

namespace {

using namespace mslice;

int cmd_sample(const std::string& config, std::size_t count, std::size_t n, std::uint64_t seed) {
    const auto spec = io::spec_from_config(io::read_config(config));
    for (std::size_t s = 0; s < count; ++s) {
        RandomStream rng(seed, s);
        const auto c = n == 0 ? sample_uniform(spec, rng) : sample_without_replacement(spec, n, rng);
        std::cout << io::configuration_to_json(c) << '\n';
    }
    return 0;
}

int cmd_enumerate(const std::string& config, std::uint64_t cap) {
    const auto spec = io::spec_from_config(io::read_config(config));
    for (const auto& c : enumerate(spec, cap)) std::cout << io::configuration_to_json(c) << '\n';
    return 0;
}

int cmd_verify_fi(const std::string& config, std::size_t functions, std::size_t polynomials, std::uint64_t seed) {
    SuiteOptions opt;
    opt.specs = config.empty() ? default_suite_specs()
                               : std::vector<MultisliceSpec>{io::spec_from_config(io::read_config(config))};
    opt.functions = functions;
    opt.polynomials = polynomials;
    opt.seed = seed;
    bool ok = true;
    for (const auto& r : run_functional_suite(opt)) {
        std::cout << io::report_to_json(r) << '\n';
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int cmd_tail(const std::string& config, const std::string& meta_path) {
    const auto experiment = io::experiment_from_config(io::read_config(config));
    const auto report = run_tail(experiment);
    io::write_tail_csv(std::cout, report);
    const std::string meta = io::tail_metadata_json(report);
    if (meta_path.empty()) {
        std::cerr << meta << '\n';
    } else {
        std::ofstream(meta_path) << meta << '\n';
    }
    return report.pass ? 0 : 1;
}

int cmd_cdist(const std::string& set_path, const std::string& query_path, double tol) {
    std::ifstream set_in(set_path);
    if (!set_in) throw io::ConfigError("cannot open set file: " + set_path);
    std::ifstream query_in(query_path);
    if (!query_in) throw io::ConfigError("cannot open query file: " + query_path);
    const SubsetIndicator a(io::read_configurations(set_in));
    const auto queries = io::read_configurations(query_in);
    std::cout << "id,d_T,gap,iterations\n";
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto r = convex_distance(queries[q], a, tol);
        std::cout << q << ',' << io::format_real(r.value) << ',' << io::format_real(r.gap) << ',' << r.iterations
                  << '\n';
    }
    return 0;
}

int cmd_norms(const std::string& tensor_path, const NormOptions& options) {
    std::ifstream in(tensor_path);
    if (!in) throw io::ConfigError("cannot open tensor file: " + tensor_path);
    io::write_norms_csv(std::cout, all_partition_norms(io::read_tensor_jsonl(in), options));
    return 0;
}

int cmd_report_bound(const std::string& id, const std::string& grid, const bounds::BoundParams& params) {
    if (!bounds::is_known(id)) throw io::ConfigError("unknown bound id: " + id);
    std::cout << "t,bound\n";
    for (const auto& p : bounds::evaluate_grid(id, params, io::parse_real_list(grid))) {
        std::cout << io::format_real(p.t) << ',' << io::format_real(p.bound) << '\n';
    }
    return 0;
}

int cmd_report_talagrand(const std::string& config, std::size_t trials, std::uint64_t seed, bool all_subsets) {
    const auto spec = io::spec_from_config(io::read_config(config));
    const auto rep = all_subsets ? run_talagrand_all_subsets(spec) : run_talagrand_exact(spec, 0, trials, seed);
    const CheckReport r = make_report("talagrand", rep.spec, rep.max_product, 1.0, 1e-9,
                                      "trials=" + std::to_string(rep.trials));
    std::cout << io::report_to_json(r) << '\n';
    return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multislice concentration toolkit"};
    app.require_subcommand(1);

    std::string config;
    std::uint64_t seed = 1;

    auto* sample = app.add_subcommand("sample", "Draw configurations (JSON lines)");
    std::size_t count = 10;
    std::size_t prefix = 0;
    sample->add_option("-c,--config", config, "Config file with a [spec] section")->required();
    sample->add_option("--count", count, "Number of draws");
    sample->add_option("-n,--prefix", prefix, "Prefix length (0 = full configuration)");
    sample->add_option("--seed", seed, "Seed");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "List every configuration (JSON lines)");
    std::uint64_t cap = kDefaultEnumerationCap;
    enumerate_cmd->add_option("-c,--config", config, "Config file with a [spec] section")->required();
    enumerate_cmd->add_option("--cap", cap, "Maximum number of states");

    auto* verify = app.add_subcommand("verify-fi", "Exhaustive functional-inequality checks (JSON lines)");
    std::size_t functions = 100;
    std::size_t polynomials = 50;
    std::uint64_t suite_seed = SuiteOptions{}.seed;
    verify->add_option("-c,--config", config, "Restrict to the [spec] of this config");
    verify->add_option("--functions", functions, "Random functions per spec");
    verify->add_option("--polynomials", polynomials, "Random polynomials per spec");
    verify->add_option("--seed", suite_seed, "Seed");

    auto* tail = app.add_subcommand("tail", "Monte Carlo tail experiment (CSV on stdout)");
    std::string meta;
    tail->add_option("-c,--config", config, "Experiment config")->required();
    tail->add_option("--meta", meta, "Write run metadata (JSON) here instead of stderr");

    auto* cdist = app.add_subcommand("cdist", "Convex distance of query points to a set (CSV)");
    std::string set_path;
    std::string query_path;
    double tol = 1e-9;
    cdist->add_option("--set", set_path, "Set members, JSON lines")->required();
    cdist->add_option("--query", query_path, "Query configurations, JSON lines")->required();
    cdist->add_option("--tol", tol, "Duality-gap tolerance");

    auto* norms = app.add_subcommand("norms", "Partition norms of a tensor (CSV)");
    std::string tensor_path;
    NormOptions norm_options;
    norms->add_option("--tensor", tensor_path, "Tensor, JSON lines")->required();
    norms->add_option("--restarts", norm_options.restarts, "Random restarts");
    norms->add_option("--tol", norm_options.tol, "Relative stopping tolerance");
    norms->add_option("--seed", norm_options.seed, "Restart seed");

    auto* report = app.add_subcommand("report", "Bound tables and exact Talagrand runs");
    report->require_subcommand(1);
    auto* bound = report->add_subcommand("bound", "Evaluate a bound over a t grid (CSV)");
    std::string bound_id;
    std::string grid;
    bounds::BoundParams params;
    params.population = 20;
    params.n = 5;
    bound->add_option("id", bound_id, "Bound id")->required();
    bound->add_option("--grid", grid, "Comma separated t values")->required();
    bound->add_option("--N", params.population, "Population size");
    bound->add_option("--n", params.n, "Sample size");
    bound->add_option("--diam", params.diam, "Diameter |X|");
    bound->add_option("--lipschitz", params.lipschitz, "Lipschitz constant");
    bound->add_option("--sum-c-sq", params.sum_c_sq, "Sum of squared difference constants");
    bound->add_option("--p", params.p, "Edge density M/N");
    bound->add_option("--vertices", params.vertices, "Vertex count");
    bound->add_option("--c", params.c, "Absolute constant");
    bound->add_option("--hs", params.hs, "Hilbert-Schmidt norm");
    bound->add_option("--op", params.op, "Operator norm");
    auto* talagrand = report->add_subcommand("talagrand", "P(A) E exp(d_T^2/144) over random sets (JSON)");
    std::size_t trials = 50;
    bool all_subsets = false;
    talagrand->add_option("-c,--config", config, "Config file with a [spec] section")->required();
    talagrand->add_option("--trials", trials, "Random sets");
    talagrand->add_option("--seed", seed, "Seed");
    talagrand->add_flag("--all-subsets", all_subsets, "Every nonempty subset instead of random ones");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) return cmd_sample(config, count, prefix, seed);
        if (*enumerate_cmd) return cmd_enumerate(config, cap);
        if (*verify) return cmd_verify_fi(config, functions, polynomials, suite_seed);
        if (*tail) return cmd_tail(config, meta);
        if (*cdist) return cmd_cdist(set_path, query_path, tol);
        if (*norms) return cmd_norms(tensor_path, norm_options);
        if (*bound) return cmd_report_bound(bound_id, grid, params);
        if (*talagrand) return cmd_report_talagrand(config, trials, seed, all_subsets);
    } catch (const io::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
