// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "mslice/convex_distance.hpp"
#include "mslice/experiment.hpp"
#include "mslice/functional.hpp"
#include "mslice/io.hpp"
#include "mslice/multislice.hpp"
#include "mslice/statistics.hpp"
#include "mslice/tensor.hpp"
#include "mslice/tensor_norms.hpp"
#include "oracles.hpp"

using namespace mslice;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string csv_body(const TailReport& r) {
    std::ostringstream out;
    io::write_tail_csv(out, r);
    return out.str();
}

bool all_dominated(const TailReport& r) {
    for (const auto& row : r.rows) {
        if (row.verdict != "DOMINATED") return false;
    }
    return r.pass;
}

std::string worst_margin(const TailReport& r) {
    double m = INFINITY;
    for (const auto& row : r.rows) m = std::min(m, row.bound - row.ci_hi);
    return "min(bound - ci_hi)=" + fmt(m);
}

TailExperiment serfling_run(const std::string& bound_id, std::size_t workers) {
    TailExperiment e{.spec = MultisliceSpec::binary(10, 10)};
    e.statistic.id = "sample_mean";
    e.statistic.n = 5;
    e.t_grid = {0.1, 0.2, 0.3, 0.4, 0.5};
    e.samples = 1000000;
    e.seed = 6;
    e.workers = workers;
    e.bound_id = bound_id;
    e.tail = TailSide::Upper;
    e.bound = default_bound_params(e);
    return e;
}

Outcome functional_suite() {
    const auto start = std::chrono::steady_clock::now();
    SuiteOptions opt;
    opt.specs = default_suite_specs();
    const auto reports = run_functional_suite(opt);
    Outcome out;
    double min_slack = INFINITY;
    std::size_t counted = 0;
    for (const auto& r : reports) {
        if (r.check == "gradient_estimate") continue;
        ++counted;
        min_slack = std::min(min_slack, r.slack);
        if (!r.pass || r.slack < -kCheckTolerance) {
            out.pass = false;
            out.detail += " failed:" + r.check + "@" + r.spec;
        }
    }
    const double elapsed = seconds_since(start);
    if (elapsed >= 300.0) out.pass = false;
    out.detail = std::to_string(counted) + " reports on " + std::to_string(opt.specs.size()) +
                 " specs, min slack " + fmt(min_slack) + ", " + fmt(elapsed) + " s" + out.detail;
    return out;
}

Outcome gradient_estimate() {
    SuiteOptions opt;
    opt.specs = default_suite_specs();
    opt.functions = 0;
    opt.polynomials = 50;
    opt.prefix_checks = false;
    opt.projection_checks = false;
    Outcome out;
    std::size_t counted = 0;
    for (const auto& r : run_functional_suite(opt)) {
        if (r.check != "gradient_estimate") continue;
        ++counted;
        if (!r.pass) {
            out.pass = false;
            out.detail += " failed@" + r.spec;
        }
    }
    if (counted != opt.specs.size()) out.pass = false;

    // f = w1 w2 - w1 w3 at w = (0, 1, 1) on kappa = (1, 2)
    const StateSpace space(MultisliceSpec({1, 2}, {0, 1}));
    MultilinearPolynomial f(3);
    f.add_term({0, 1}, 1.0);
    f.add_term({0, 2}, -1.0);
    const Configuration w{0, 1, 1};
    const auto grad = gradient(f, w);
    double grad_norm = 0.0;
    for (const double g : grad) grad_norm += g * g;
    const auto table = tabulate(space, [&](const Configuration& x) { return f(x); });
    const double g = gamma(space, table, DifferenceOperator::Gamma)[space.index_of(w)];
    const bool counterexample = grad_norm == 0.0 && std::abs(g * g - 1.0 / 3.0) < 1e-15;
    out.pass = out.pass && counterexample;
    out.detail = std::to_string(counted) + " specs x 50 polynomials; counterexample |grad f|=" +
                 fmt(std::sqrt(grad_norm)) + " Gamma=" + fmt(g) + out.detail;
    return out;
}

Outcome talagrand() {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    double worst = 0.0;
    std::size_t sets = 0;
    auto take = [&](const TalagrandReport& r) {
        worst = std::max(worst, r.max_product);
        sets += r.trials;
        if (!r.pass || r.max_product > 1.0 + 1e-9) {
            out.pass = false;
            out.detail += " failed@" + r.spec;
        }
    };
    take(run_talagrand_all_subsets(MultisliceSpec({2, 1}, {0, 1})));
    take(run_talagrand_all_subsets(MultisliceSpec({2, 2}, {0, 1})));
    std::uint64_t seed = 300;
    for (const auto& spec : default_suite_specs()) take(run_talagrand_exact(spec, 0, 50, seed++));
    const double elapsed = seconds_since(start);
    if (elapsed >= 300.0) out.pass = false;
    out.detail = std::to_string(sets) + " sets, max P(A) E exp(d^2/144)=" + fmt(worst) + ", " + fmt(elapsed) +
                 " s" + out.detail;
    return out;
}

Outcome convex_distance_solver() {
    Outcome out;
    std::mt19937_64 gen(404);
    std::normal_distribution<double> z;
    double worst_gap = 0.0;
    std::size_t duality_failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 8)(gen);
        const std::size_t ones = std::uniform_int_distribution<std::size_t>(1, n - 1)(gen);
        const auto states = enumerate(MultisliceSpec::binary(n - ones, ones));
        std::vector<std::size_t> idx(states.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), gen);
        const std::size_t size = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(4, states.size()))(gen);
        std::vector<Configuration> members;
        for (std::size_t k = 0; k < size; ++k) members.push_back(states[idx[k]]);
        const SubsetIndicator a(members);
        const auto& omega = states[std::uniform_int_distribution<std::size_t>(0, states.size() - 1)(gen)];

        const double d = convex_distance(omega, a).value;
        worst_gap = std::max(worst_gap, std::abs(d - convex_distance_bruteforce(omega, a, 1000)));
        for (int k = 0; k < 1000; ++k) {
            std::vector<double> alpha(n);
            double s = 0.0;
            for (auto& x : alpha) {
                x = z(gen);
                s += x * x;
            }
            for (auto& x : alpha) x /= std::sqrt(s);
            if (alpha_distance(omega, a, alpha) > d + 1e-9) ++duality_failures;
        }
    }
    const SubsetIndicator small({Configuration{0, 1, 0}, Configuration{1, 0, 0}});
    const double root = convex_distance(Configuration{0, 0, 1}, small).value;
    out.pass = worst_gap <= 3e-3 && duality_failures == 0 && std::abs(root - std::sqrt(1.5)) <= 1e-5;
    out.detail = "max |solver - grid|=" + fmt(worst_gap) + ", duality violations " + std::to_string(duality_failures) +
                 ", d_T((0,0,1),A)=" + fmt(root);
    return out;
}

Outcome tensor_norms() {
    std::mt19937_64 gen(505);
    std::normal_distribution<double> z;
    std::uniform_int_distribution<std::size_t> order(1, 3);
    std::uniform_int_distribution<std::size_t> side(1, 5);
    const double tol = 1e-8;
    std::size_t order_failures = 0;
    double spectral_err = 0.0;
    double hs_err = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = order(gen);
        std::vector<std::size_t> shape(d);
        for (auto& s : shape) s = side(gen);
        DenseTensor a(shape);
        for (auto& v : a.data()) v = z(gen);
        const auto norms = all_partition_norms(a);
        const double hs = hs_norm(a);
        double ss = 0.0;
        for (const double v : a.data()) ss += v * v;
        hs_err = std::max(hs_err, std::abs(hs - std::sqrt(ss)));
        double op = 0.0;
        for (const auto& pn : norms) {
            if (pn.partition == Partition::finest(d)) op = pn.result.value;
            if (pn.partition == Partition::coarsest(d)) hs_err = std::max(hs_err, std::abs(pn.result.value - std::sqrt(ss)));
        }
        for (const auto& x : norms) {
            if (x.result.value > hs + tol || op > x.result.value + tol) ++order_failures;
            for (const auto& y : norms) {
                if (x.partition.refines(y.partition) && x.result.value > y.result.value + tol) ++order_failures;
            }
        }
        if (d == 2) {
            Eigen::MatrixXd m(shape[0], shape[1]);
            for (std::size_t i = 0; i < shape[0]; ++i) {
                for (std::size_t j = 0; j < shape[1]; ++j) m(i, j) = a.at({i, j});
            }
            spectral_err = std::max(spectral_err, std::abs(op - oracle::spectral_norm(m)));
        }
    }
    Outcome out;
    out.pass = order_failures == 0 && spectral_err <= 1e-8 && hs_err <= 1e-12;
    out.detail = "ordering violations " + std::to_string(order_failures) + ", max spectral error " + fmt(spectral_err) +
                 ", max HS error " + fmt(hs_err);
    return out;
}

Outcome serfling() {
    const auto start = std::chrono::steady_clock::now();
    const auto a = run_tail(serfling_run("serfling", 8));
    const auto b = run_tail(serfling_run("serfling_original", 8));
    const double elapsed = seconds_since(start);
    Outcome out;
    out.pass = all_dominated(a) && all_dominated(b) && elapsed < 120.0;
    out.detail = "serfling " + worst_margin(a) + "; serfling_original " + worst_margin(b) + "; " + fmt(elapsed) + " s";
    return out;
}

Outcome kolmogorov() {
    TailExperiment e{.spec = MultisliceSpec::binary(10, 10)};
    e.statistic.id = "kolmogorov";
    e.statistic.n = 5;
    e.statistic.scale = std::sqrt(5.0);
    e.t_grid = {0.5, 1.0, 1.5, 2.0};
    e.samples = 1000000;
    e.seed = 7;
    e.workers = 4;
    e.bound_id = "kolmogorov";
    e.centering = Centering::MonteCarlo;
    e.tail = TailSide::TwoSided;
    e.bound = default_bound_params(e);
    const auto r = run_tail(e);
    return {all_dominated(r), worst_margin(r) + ", center " + fmt(r.center.value) + " +- " + fmt(r.center.standard_error)};
}

Outcome triangles() {
    Outcome out;
    // all 64 graphs on 4 vertices, grouped by edge count
    std::uint64_t total[7] = {};
    std::uint64_t graphs[7] = {};
    for (unsigned mask = 0; mask < 64; ++mask) {
        auto edge = [&](std::size_t i, std::size_t j) { return (mask >> EdgeConfiguration::edge_index(4, i, j)) & 1u; };
        std::uint64_t tri = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                for (std::size_t k = j + 1; k < 4; ++k) tri += edge(i, j) & edge(j, k) & edge(i, k);
            }
        }
        const int m = std::popcount(mask);
        total[m] += tri;
        ++graphs[m];
    }
    for (std::size_t m = 0; m <= 6; ++m) {
        const double exhaustive = static_cast<double>(total[m]) / static_cast<double>(graphs[m]);
        if (expected_triangles(4, m) != exhaustive) {
            out.pass = false;
            out.detail += " M=" + std::to_string(m) + " mismatch";
        }
    }

    TailExperiment e{.spec = EdgeConfiguration::spec(10, 13)};
    e.statistic.id = "triangles";
    e.statistic.vertices = 10;
    e.t_grid = {1.0, 2.0, 3.0, 4.0, 5.0};
    e.samples = 100000;
    e.seed = 8;
    e.workers = 4;
    e.bound_id = "triangles";
    e.qualitative = true;
    e.tail = TailSide::TwoSided;
    e.bound = default_bound_params(e);
    const auto values = sample_statistic(e);
    double mean = 0.0;
    double sq = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (const double v : values) sq += (v - mean) * (v - mean);
    const double se = std::sqrt(sq / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
    const double expected = expected_triangles(10, 13);
    const double z = std::abs(mean - expected) / se;
    const auto r = run_tail(e);
    out.pass = out.pass && z <= 4.0 && r.monotone && r.pass;
    out.detail = "M=0..6 exact; MC mean " + fmt(mean) + " vs " + fmt(expected) + " (" + fmt(z) +
                 " SE); tail monotone=" + (r.monotone ? "yes" : "no") + out.detail;
    return out;
}

Outcome bounded_difference() {
    TailExperiment e{.spec = MultisliceSpec::binary(10, 10)};
    e.statistic.id = "sample_mean";
    e.statistic.n = 10;
    e.t_grid = {0.1, 0.2, 0.3, 0.4, 0.5};
    e.samples = 1000000;
    e.seed = 9;
    e.workers = 4;
    e.bound_id = "swor_bounded_difference";
    e.tail = TailSide::TwoSided;
    e.bound = default_bound_params(e);
    e.bound.sum_c_sq = 1.0 / 10.0;
    const auto r = run_tail(e);
    return {all_dominated(r), "n=10, sum c_i^2=1/n, two-sided: " + worst_margin(r)};
}

Outcome reproducibility() {
    const auto one = csv_body(run_tail(serfling_run("serfling", 1)));
    const auto four = csv_body(run_tail(serfling_run("serfling", 4)));
    return {one == four && !one.empty(), "workers 1 vs 4, " + std::to_string(one.size()) + " CSV bytes"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"functional-inequality suite", functional_suite},
        {"gradient estimate", gradient_estimate},
        {"Talagrand exact", talagrand},
        {"convex distance solver", convex_distance_solver},
        {"tensor norms", tensor_norms},
        {"Serfling domination", serfling},
        {"Kolmogorov domination", kolmogorov},
        {"triangles", triangles},
        {"bounded-difference swor bound", bounded_difference},
        {"reproducibility", reproducibility},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
