#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mslice/multislice.hpp"
#include "mslice/report.hpp"
#include "mslice/tail_bounds.hpp"

namespace mslice {

enum class Centering { Exact, MonteCarlo, Median };
enum class TailSide { Upper, Lower, TwoSided };

/// Statistic ids: sample_mean, sample_std, kolmogorov (prefix statistics of
/// length n), triangles (edge indicators of G(vertices, M)) and
/// largest_eigenvalue (full configuration read as the upper triangle of a
/// dim x dim symmetric matrix).
struct StatisticSpec {
    std::string id = "sample_mean";
    std::size_t n = 0;          // prefix length; 0 means the full configuration
    double scale = 1.0;         // the statistic is multiplied by this factor
    std::size_t vertices = 0;   // triangles
    std::size_t dim = 0;        // largest_eigenvalue
};

const std::vector<std::string>& statistic_ids();

struct TailExperiment {
    MultisliceSpec spec;
    StatisticSpec statistic;
    std::vector<double> t_grid;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::string bound_id = "serfling";
    bounds::BoundParams bound;
    Centering centering = Centering::Exact;
    TailSide tail = TailSide::TwoSided;
    /// Grid values are relative deviations eps; the threshold is eps * center.
    bool relative = false;
    /// Compare against the bound shape only and assert monotone decay of the
    /// empirical tail. Defaults to true for bounds with an unspecified
    /// constant unless a constant was supplied.
    bool qualitative = false;
    double alpha = 1e-3;
};

/// Checks the experiment invariants (samples >= 1000, increasing nonempty
/// grid, workers >= 1, known ids, prefix length range).
void validate(const TailExperiment& experiment);

/// Copy of experiment.bound with the fields that follow from the model
/// filled in: N, n, |X|, and p and vertices for triangles. run_tail evaluates
/// the bound with these.
bounds::BoundParams structural_bound_params(const TailExperiment& experiment);

/// As above, plus the statistic's own difference constants
/// (sum c_i^2 = |X|^2 / n for the sample mean).
bounds::BoundParams default_bound_params(const TailExperiment& experiment);

/// Statistic value of one draw (a prefix of length n, or a full
/// configuration when n is 0), multiplied by the scale factor.
double evaluate_statistic(const StatisticSpec& statistic, const MultisliceSpec& spec, const Configuration& sample);

/// Value of the statistic for every sample index, computed in parallel.
/// Sample s always uses RandomStream(seed, s), so the result does not depend
/// on the number of workers.
std::vector<double> sample_statistic(const TailExperiment& experiment);

struct CenterEstimate {
    double value = 0.0;
    double standard_error = 0.0;  // 0 for exact centers
    Centering method = Centering::Exact;
};

/// Exact expectation when a closed form exists (sample mean: population
/// mean; triangles: expected_triangles), otherwise the Monte Carlo mean with
/// its standard error, or the empirical median for median centering.
std::optional<double> exact_center(const TailExperiment& experiment);
CenterEstimate estimate_center(const TailExperiment& experiment, const std::vector<double>& values);
CenterEstimate estimate_center(const TailExperiment& experiment);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Exact binomial (Clopper-Pearson) interval at level 1 - alpha.
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double alpha);

struct TailRow {
    double t = 0.0;          // grid value (eps in relative mode)
    double threshold = 0.0;  // deviation actually tested
    std::uint64_t count = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double bound = 0.0;
    std::string verdict;     // DOMINATED, VIOLATED or QUALITATIVE
};

struct TailReport {
    std::vector<TailRow> rows;
    CenterEstimate center;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    double runtime_seconds = 0.0;
    std::string statistic;
    std::string bound_id;
    bool qualitative = false;
    /// The statistic is a constant (prefix statistic with n = N); the
    /// reported tails are exact and the intervals collapse to p_hat.
    bool exact_law = false;
    bool monotone = true;
    bool pass = true;
    double sample_mean = 0.0;
    double sample_se = 0.0;
};

/// Worker count after applying the CONC_THREADS environment override.
std::size_t resolve_workers(std::size_t requested);

TailReport run_tail(const TailExperiment& experiment);

std::string to_string(Centering c);
std::string to_string(TailSide s);
Centering parse_centering(const std::string& s);
TailSide parse_tail_side(const std::string& s);

/// Upper tail for one-sided bounds (prefactor 1, and d_T itself), two-sided
/// for the rest.
TailSide default_tail_side(const std::string& bound_id);

struct TalagrandReport {
    std::string spec;
    std::size_t trials = 0;
    double max_product = 0.0;     // max over sets of P(A) E exp(d_T^2 / 144)
    std::size_t worst_set_size = 0;
    double max_solver_gap = 0.0;
    bool pass = true;
};

/// Random sets A (size uniform in [1, |Omega|] when set_size is 0) on an
/// exhaustively enumerated space (cardinality <= 720).
TalagrandReport run_talagrand_exact(const MultisliceSpec& spec, std::size_t set_size, std::size_t trials,
                                    std::uint64_t seed);

/// Every nonempty subset of the space (|Omega| <= 16).
TalagrandReport run_talagrand_all_subsets(const MultisliceSpec& spec);

}  // namespace mslice
