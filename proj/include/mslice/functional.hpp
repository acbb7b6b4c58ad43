#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mslice/multislice.hpp"
#include "mslice/report.hpp"
#include "mslice/statistics.hpp"

namespace mslice {

// Function tables are value vectors indexed by the enumeration order of a
// StateSpace (uniform weights) or a PrefixSpace (push-forward weights).

using Table = std::vector<double>;

Table tabulate(const StateSpace& space, const std::function<double(const Configuration&)>& f);
Table tabulate(const PrefixSpace& space, const std::function<double(const Configuration&)>& f);

enum class DifferenceOperator { Gamma, GammaPlus, H, HPlus };

double expectation(const StateSpace& space, std::span<const double> f);
double expectation(const PrefixSpace& space, std::span<const double> f);

/// Ent(f) = E f log f - E f log E f. Requires f > 0 everywhere.
double entropy(const StateSpace& space, std::span<const double> f);
double entropy(const PrefixSpace& space, std::span<const double> f);
double variance(const StateSpace& space, std::span<const double> f);
double variance(const PrefixSpace& space, std::span<const double> f);

/// Pointwise squared difference operator. Gamma/GammaPlus use the switch
/// pairs: (1/2N) sum_{i<j} (f(w) - f(tau_ij w))^2 (positive part for Plus).
Table difference_squared(const StateSpace& space, std::span<const double> f, DifferenceOperator op);

/// H/HPlus on a prefix space, with sup/inf over admissible replacements:
/// (1/2) sum_i (sup_i f - inf_i f)^2, resp. (1/2) sum_i (f - inf_i f)^2.
Table difference_squared(const PrefixSpace& space, std::span<const double> f, DifferenceOperator op);

/// Pointwise Gamma(f), GammaPlus(f), H(f) or HPlus(f) (square roots of the above).
Table gamma(const StateSpace& space, std::span<const double> f, DifferenceOperator op);
Table gamma(const PrefixSpace& space, std::span<const double> f, DifferenceOperator op);

/// (1/2N) sum_{i<j} E (Gamma_ij f)(Gamma_ij g).
double dirichlet_form(const StateSpace& space, std::span<const double> f, std::span<const double> g);

/// Constants of the inequalities checked below.
double lsi_constant(const MultisliceSpec& spec);                 // 2 log(N / kappa_min) / log 2
double beckner_constant(const MultisliceSpec& spec, double p);   // 4N / (p (N + 2))
double moment_theta();                                           // sqrt(e) / (sqrt(e) - 1)

inline constexpr double kCheckTolerance = 1e-9;

/// Gamma_ij(f)^2(w) against twice the conditional mean square deviation of f
/// when the pair (i, j) is resampled given the other coordinates. The
/// conditional law is read off by grouping states that agree off {i, j}.
/// lhs is the worst absolute error, rhs is 0.
CheckReport check_local_variance_identity(const StateSpace& space, std::span<const double> f,
                                          double tol = 1e-12);

/// Ent(f^2) <= 2 sigma^2 E Gamma(f)^2 with sigma^2 = lsi_constant.
CheckReport check_lsi(const StateSpace& space, std::span<const double> f, double tol = kCheckTolerance);

/// Var(f) <= sigma^2 E Gamma(f)^2.
CheckReport check_poincare(const StateSpace& space, std::span<const double> f, double sigma_sq,
                           double tol = kCheckTolerance);

/// Ent(e^f) <= (sigma^2 / 2) E Gamma(f)^2 e^f; op is Gamma or GammaPlus.
CheckReport check_mlsi(const StateSpace& space, std::span<const double> f, DifferenceOperator op,
                       double sigma_sq, double tol = kCheckTolerance);

/// E f^p - (E f)^p <= (beta_p p / 2) E(f, f^{p-1}) for f >= 0, p in (1, 2].
CheckReport check_beckner(const StateSpace& space, std::span<const double> f, double p,
                          double tol = kCheckTolerance);

/// ||f - E f||_p <= sqrt(4 theta p) ||Gamma(f)||_p for p >= 2.
CheckReport check_moment_estimate(const StateSpace& space, std::span<const double> f, double p,
                                  double tol = kCheckTolerance);

/// Pointwise Gamma(f)^2 <= (3|X|^2/2) |grad f|^2 + (3|X|^4/(4N)) ||Hess f||_HS^2.
CheckReport check_gradient_estimate(const StateSpace& space, const MultilinearPolynomial& poly,
                                    double tol = kCheckTolerance);

using ScalarField = std::function<double(std::span<const double>)>;
using GradientField = std::function<std::vector<double>(std::span<const double>)>;

/// Ent(e^f) <= 4 |X|^2 E e^f |grad f|^2 for convex f with an analytic
/// gradient. The gradient is first compared against central differences at
/// every state (relative tolerance 1e-6); a mismatch raises
/// std::invalid_argument.
CheckReport check_convex_mlsi(const StateSpace& space, const ScalarField& f, const GradientField& grad,
                              double tol = kCheckTolerance);

/// True if f takes equal values (to 1e-12 relative) on prefixes that are
/// coordinate permutations of each other.
bool is_symmetric_function(const PrefixSpace& space, std::span<const double> f);

/// Ent(e^f) <= (sigma^2 / 2) E h(f)^2 e^f under the push-forward weights,
/// sigma^2 = 4(1 - n/N) for H and 8(1 - n/N) for HPlus. Non-symmetric f
/// raises std::invalid_argument.
CheckReport check_swor_mlsi(const PrefixSpace& space, std::span<const double> f, DifferenceOperator op,
                            double tol = kCheckTolerance);

/// Ent(f^2) <= 2 sigma^2 E h(f)^2, sigma^2 = lsi_constant (1 - n/N).
CheckReport check_swor_lsi(const PrefixSpace& space, std::span<const double> f, double tol = kCheckTolerance);

/// Psi: position k of {1..N} to its level, blocks of kappa_1, kappa_2, ...
std::vector<std::size_t> coarsening_map(const MultisliceSpec& spec);

/// Applies Psi coordinatewise to a permutation of (1, ..., N).
Configuration coarsen(const MultisliceSpec& spec, const Configuration& permutation);

/// E_kappa f = E_perm (f o Psi) and E_kappa(f, g) = E_perm(f o Psi, g o Psi)
/// over S_N (N <= 8). lhs is the larger absolute discrepancy, rhs is 0.
CheckReport check_projection_identities(const StateSpace& space, std::span<const double> f,
                                        std::span<const double> g, double tol = 1e-12);

/// Corpus run over small multislices and random function tables.
struct SuiteOptions {
    std::vector<MultisliceSpec> specs;
    std::size_t functions = 100;
    std::size_t polynomials = 50;
    std::uint64_t seed = 20240601;
    bool prefix_checks = true;
    bool projection_checks = true;
};

/// Default corpus: every listed kappa with cardinality <= 720.
std::vector<MultisliceSpec> default_suite_specs();

/// One report per (check, spec): the worst instance, pass only if every
/// instance passed. Also reports the empirical best LSI constant per spec.
std::vector<CheckReport> run_functional_suite(const SuiteOptions& options);

std::string to_string(DifferenceOperator op);

}  // namespace mslice
