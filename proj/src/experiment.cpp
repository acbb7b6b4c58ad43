#include "mslice/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "mslice/convex_distance.hpp"
#include "mslice/random.hpp"
#include "mslice/statistics.hpp"

namespace mslice {

const std::vector<std::string>& statistic_ids() {
    static const std::vector<std::string> ids = {"sample_mean", "sample_std", "kolmogorov", "triangles",
                                                 "largest_eigenvalue"};
    return ids;
}

std::string to_string(Centering c) {
    switch (c) {
        case Centering::Exact: return "exact";
        case Centering::MonteCarlo: return "mc";
        case Centering::Median: return "median";
    }
    return "unknown";
}

std::string to_string(TailSide s) {
    switch (s) {
        case TailSide::Upper: return "upper";
        case TailSide::Lower: return "lower";
        case TailSide::TwoSided: return "two_sided";
    }
    return "unknown";
}

Centering parse_centering(const std::string& s) {
    if (s == "exact") return Centering::Exact;
    if (s == "mc") return Centering::MonteCarlo;
    if (s == "median") return Centering::Median;
    throw std::invalid_argument("unknown centering: " + s);
}

TailSide parse_tail_side(const std::string& s) {
    if (s == "upper") return TailSide::Upper;
    if (s == "lower") return TailSide::Lower;
    if (s == "two_sided") return TailSide::TwoSided;
    throw std::invalid_argument("unknown tail side: " + s);
}

TailSide default_tail_side(const std::string& bound_id) {
    if (bound_id == "swor_convex_distance" || bounds::prefactor(bound_id) == 1.0) return TailSide::Upper;
    return TailSide::TwoSided;
}

namespace {

bool is_prefix_statistic(const std::string& id) {
    return id == "sample_mean" || id == "sample_std" || id == "kolmogorov";
}

}  // namespace

void validate(const TailExperiment& e) {
    const auto& ids = statistic_ids();
    const auto& st = e.statistic;
    if (std::find(ids.begin(), ids.end(), st.id) == ids.end()) {
        throw std::invalid_argument("unknown statistic id: " + st.id);
    }
    if (!bounds::is_known(e.bound_id)) throw std::invalid_argument("unknown bound id: " + e.bound_id);
    if (e.samples < 1000) throw std::invalid_argument("an experiment needs at least 1000 samples");
    if (e.workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (e.t_grid.empty()) throw std::invalid_argument("the t grid must be nonempty");
    for (std::size_t k = 0; k < e.t_grid.size(); ++k) {
        if (!(e.t_grid[k] >= 0.0)) throw std::invalid_argument("grid values must be nonnegative");
        if (k > 0 && !(e.t_grid[k] > e.t_grid[k - 1])) throw std::invalid_argument("the t grid must be increasing");
    }
    if (!(e.alpha > 0.0 && e.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (st.n > e.spec.size()) throw std::invalid_argument("prefix length exceeds N");
    if (is_prefix_statistic(st.id) && st.n == 0) throw std::invalid_argument(st.id + " needs a prefix length n");
    if (st.id == "sample_std" && st.n < 2) throw std::invalid_argument("sample_std needs n >= 2");
    if (st.id == "triangles") {
        if (st.vertices < 3) throw std::invalid_argument("triangles needs at least 3 vertices");
        if (e.spec.size() != EdgeConfiguration::edge_count(st.vertices) || e.spec.levels() != 2 ||
            e.spec.value(0) != 0.0 || e.spec.value(1) != 1.0) {
            throw std::invalid_argument("triangles needs kappa = (N - M, M) over {0, 1} with N = n(n-1)/2");
        }
    }
    if (st.id == "largest_eigenvalue" && e.spec.size() != st.dim * (st.dim + 1) / 2) {
        throw std::invalid_argument("largest_eigenvalue needs N = dim (dim + 1) / 2");
    }
}

bounds::BoundParams structural_bound_params(const TailExperiment& e) {
    bounds::BoundParams q = e.bound;
    q.population = e.spec.size();
    q.n = e.statistic.n == 0 ? e.spec.size() : e.statistic.n;
    q.diam = e.spec.diameter();
    if (e.statistic.id == "triangles") {
        q.vertices = e.statistic.vertices;
        q.p = static_cast<double>(e.spec.kappa()[1]) / static_cast<double>(e.spec.size());
    }
    return q;
}

bounds::BoundParams default_bound_params(const TailExperiment& e) {
    bounds::BoundParams q = structural_bound_params(e);
    if (e.statistic.id == "sample_mean") {
        // c_i = |X| / n for each of the n coordinates
        q.sum_c_sq = q.diam * q.diam / static_cast<double>(q.n);
    }
    return q;
}

double evaluate_statistic(const StatisticSpec& st, const MultisliceSpec& spec, const Configuration& sample) {
    double v;
    if (st.id == "sample_mean") v = sample_mean(sample);
    else if (st.id == "sample_std") v = sample_std(sample);
    else if (st.id == "kolmogorov") v = kolmogorov_stat(sample, spec);
    else if (st.id == "triangles") v = static_cast<double>(triangle_count(EdgeConfiguration(st.vertices, sample)));
    else if (st.id == "largest_eigenvalue") v = largest_abs_eigenvalue(symmetric_from_upper(sample, st.dim));
    else throw std::invalid_argument("unknown statistic id: " + st.id);
    return st.scale * v;
}

std::size_t resolve_workers(std::size_t requested) {
    if (const char* env = std::getenv("CONC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw std::invalid_argument(std::string("CONC_THREADS must be a positive integer, got '") + env + "'");
        }
        return static_cast<std::size_t>(v);
    }
    return std::max<std::size_t>(requested, 1);
}

std::vector<double> sample_statistic(const TailExperiment& e) {
    validate(e);
    const std::size_t workers = resolve_workers(e.workers);
    std::vector<double> values(e.samples);
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t s = begin; s < end; ++s) {
            RandomStream rng(e.seed, s);
            const Configuration draw = e.statistic.n == 0 ? sample_uniform(e.spec, rng)
                                                          : sample_without_replacement(e.spec, e.statistic.n, rng);
            values[s] = evaluate_statistic(e.statistic, e.spec, draw);
        }
    };
    if (workers == 1) {
        work(0, e.samples);
        return values;
    }
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = e.samples * w / workers;
        const std::uint64_t end = e.samples * (w + 1) / workers;
        threads.emplace_back(work, begin, end);
    }
    for (auto& t : threads) t.join();
    return values;
}

std::optional<double> exact_center(const TailExperiment& e) {
    if (e.statistic.id == "sample_mean") return e.statistic.scale * e.spec.mean();
    if (e.statistic.id == "triangles") {
        return e.statistic.scale * expected_triangles(e.statistic.vertices, e.spec.kappa()[1]);
    }
    return std::nullopt;
}

namespace {

void mean_and_se(const std::vector<double>& values, double& mean, double& se) {
    double s = 0.0;
    for (const double v : values) s += v;
    mean = s / static_cast<double>(values.size());
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    const double n = static_cast<double>(values.size());
    se = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

double median_of(std::vector<double> values) {
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
    return values[mid];
}

}  // namespace

CenterEstimate estimate_center(const TailExperiment& e, const std::vector<double>& values) {
    CenterEstimate c;
    c.method = e.centering;
    switch (e.centering) {
        case Centering::Exact: {
            const auto exact = exact_center(e);
            if (!exact) throw std::invalid_argument("no closed-form expectation for statistic " + e.statistic.id);
            c.value = *exact;
            break;
        }
        case Centering::MonteCarlo:
            mean_and_se(values, c.value, c.standard_error);
            break;
        case Centering::Median:
            c.value = median_of(values);
            break;
    }
    return c;
}

CenterEstimate estimate_center(const TailExperiment& e) {
    if (e.centering == Centering::Exact) return estimate_center(e, {});
    return estimate_center(e, sample_statistic(e));
}

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double alpha) {
    if (trials == 0 || successes > trials) throw std::invalid_argument("invalid binomial counts");
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    Interval iv;
    iv.lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
    iv.hi = successes == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
    return iv;
}

TailReport run_tail(const TailExperiment& e) {
    const auto started = std::chrono::steady_clock::now();
    validate(e);
    const std::vector<double> values = sample_statistic(e);
    TailReport rep;
    rep.center = estimate_center(e, values);
    rep.samples = e.samples;
    rep.seed = e.seed;
    rep.workers = resolve_workers(e.workers);
    rep.statistic = e.statistic.id;
    rep.bound_id = e.bound_id;
    rep.qualitative = e.qualitative;
    mean_and_se(values, rep.sample_mean, rep.sample_se);
    // A symmetric prefix statistic of the whole population is a constant, so
    // its tail probabilities are known exactly and need no interval.
    rep.exact_law = is_prefix_statistic(e.statistic.id) && e.statistic.n == e.spec.size();
    if (rep.exact_law && std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) != values.end()) {
        throw std::logic_error("statistic of the full population is not constant");
    }

    const auto params = structural_bound_params(e);
    const double widen = e.centering == Centering::MonteCarlo ? 3.0 * rep.center.standard_error : 0.0;
    double previous = 2.0;
    for (const double t : e.t_grid) {
        TailRow row;
        row.t = t;
        row.threshold = e.relative ? t * rep.center.value : t;
        const double cut = row.threshold - 1e-12 * std::max(1.0, std::abs(row.threshold));
        std::uint64_t count = 0;
        for (const double v : values) {
            double dev;
            switch (e.tail) {
                case TailSide::Upper: dev = v - rep.center.value; break;
                case TailSide::Lower: dev = rep.center.value - v; break;
                default: dev = std::abs(v - rep.center.value); break;
            }
            if (dev >= cut) ++count;
        }
        row.count = count;
        row.p_hat = static_cast<double>(count) / static_cast<double>(e.samples);
        if (rep.exact_law) {
            row.ci_lo = row.ci_hi = row.p_hat;
        } else {
            const auto iv = clopper_pearson(count, e.samples, e.alpha);
            row.ci_lo = iv.lo;
            row.ci_hi = iv.hi;
        }
        const double bound_arg =
            e.bound_id == "triangles_relative" ? t : std::max(row.threshold - widen, 0.0);
        row.bound = bounds::evaluate(e.bound_id, params, bound_arg);
        if (row.p_hat > previous) rep.monotone = false;
        previous = row.p_hat;
        if (e.qualitative) {
            row.verdict = "QUALITATIVE";
        } else {
            row.verdict = row.ci_hi <= row.bound ? "DOMINATED" : "VIOLATED";
            if (row.verdict != "DOMINATED") rep.pass = false;
        }
        rep.rows.push_back(row);
    }
    if (e.qualitative) rep.pass = rep.monotone;
    rep.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rep;
}

namespace {

double talagrand_product(const StateSpace& space, const std::vector<std::size_t>& members, double& max_gap) {
    std::vector<Configuration> configs;
    configs.reserve(members.size());
    for (const auto m : members) configs.push_back(space.state(m));
    const SubsetIndicator a(std::move(configs));
    std::vector<bool> in_a(space.size(), false);
    for (const auto m : members) in_a[m] = true;
    double sum = 0.0;
    for (std::size_t s = 0; s < space.size(); ++s) {
        if (in_a[s]) {
            sum += 1.0;
            continue;
        }
        const auto r = convex_distance(space.state(s), a);
        max_gap = std::max(max_gap, r.gap);
        sum += std::exp(r.value * r.value / 144.0);
    }
    const double count = static_cast<double>(space.size());
    return static_cast<double>(members.size()) / count * (sum / count);
}

void record(TalagrandReport& rep, double product, std::size_t size) {
    ++rep.trials;
    if (product > rep.max_product) {
        rep.max_product = product;
        rep.worst_set_size = size;
    }
    if (product > 1.0 + 1e-9) rep.pass = false;
}

}  // namespace

TalagrandReport run_talagrand_exact(const MultisliceSpec& spec, std::size_t set_size, std::size_t trials,
                                    std::uint64_t seed) {
    const StateSpace space(spec, 720);
    if (set_size > space.size()) throw std::invalid_argument("set size exceeds the state space");
    TalagrandReport rep;
    rep.spec = spec.describe();
    std::vector<std::size_t> order(space.size());
    for (std::size_t trial = 0; trial < trials; ++trial) {
        RandomStream rng(seed, trial);
        std::size_t size = set_size;
        if (size == 0) size = std::uniform_int_distribution<std::size_t>(1, space.size())(rng);
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::size_t> members(order.begin(), order.begin() + static_cast<long>(size));
        std::sort(members.begin(), members.end());
        record(rep, talagrand_product(space, members, rep.max_solver_gap), size);
    }
    return rep;
}

TalagrandReport run_talagrand_all_subsets(const MultisliceSpec& spec) {
    const StateSpace space(spec, 16);
    TalagrandReport rep;
    rep.spec = spec.describe();
    const std::size_t states = space.size();
    for (std::uint32_t mask = 1; mask < (1u << states); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t s = 0; s < states; ++s) {
            if (mask & (1u << s)) members.push_back(s);
        }
        record(rep, talagrand_product(space, members, rep.max_solver_gap), members.size());
    }
    return rep;
}

}  // namespace mslice
