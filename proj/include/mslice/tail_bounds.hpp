#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mslice::bounds {

// Every calculator returns the raw bound for t >= 0 (a negative t is an
// error). When the finite-sampling factor 1 - n/N vanishes the statistic is
// deterministic: the bound is its prefactor at t = 0 and 0 for t > 0.

/// exp(-N t^2 / (4 sum_{i<j} c_ij^2)).
double bounded_difference(std::size_t population, double sum_c_sq, double t);

/// exp(-t^2 / (16 |X|^2)) for convex 1-Lipschitz f.
double convex_lipschitz(double diam, double t);

/// ||E nabla^k f||_I for one partition I of {1..k}; `blocks` is |I|.
struct DerivativeNorm {
    std::size_t order = 1;
    std::size_t blocks = 1;
    double value = 0.0;
};

/// 2 exp(-c min_k min_I (t / (|X|^k ||E nabla^k f||_I))^{2/|I|}). Terms with a
/// zero norm impose no constraint and are skipped.
double multilinear(double t, const std::vector<DerivativeNorm>& norms, double diam, double c = 1.0);

/// Quadratic-form specialization:
/// 2 exp(-c min(t^2 / (|X|^4 ||A||_HS^2), t / (|X|^2 ||A||_op))).
double hanson_wright(double t, double hs, double op, double diam, double c = 1.0);

/// 2 exp(-c min(t^2 / (n^3 + p^2 n^3 + p^4 n^4), t / (n^{1/2} + p n), t^{2/3}))
/// for the triangle count of G(n, M), p = M / N.
double triangles(std::size_t vertices, double p, double t, double c = 1.0);

/// The same bound at t = eps E f in its simplified form
/// 2 exp(-c min(eps^2 n^3 p^6, min(eps^2, eps^{2/3}) n^2 p^2)).
double triangles_relative(std::size_t vertices, double p, double eps, double c = 1.0);

/// exp(-t^2 / (4 (1 - n/N) sum_i c_i^2)).
double swor_bounded_difference(std::size_t n, std::size_t population, double sum_ci_sq, double t);

/// exp(-n t^2 / (4 (1 - n/N) |X|^2)).
double serfling(std::size_t n, std::size_t population, double diam, double t);

/// exp(-2 n t^2 / ((1 - (n-1)/N) |X|^2)).
double serfling_original(std::size_t n, std::size_t population, double diam, double t);

/// 2 exp(-t^2 / (4 (1 - n/N))) for sqrt(n) |f - E f|, f the Kolmogorov statistic.
double kolmogorov(std::size_t n, std::size_t population, double t);

/// 4 exp(-t^2 / (144 L^2 |X|^2)) around a median.
double convex_lipschitz_median(double lipschitz, double diam, double t);

/// 4 exp(-t^2 / (144 |X|^2)) for the largest absolute eigenvalue.
double eigenvalue(double diam, double t);

/// e exp(-t^2 / (16 (1 - n/N))) for d_T to a symmetric set of mass >= 1/2.
double swor_convex_distance(std::size_t n, std::size_t population, double t);

/// 2e exp(-t^2 / (16 (1 - n/N) L^2 |X|^2)) around a median.
double swor_convex_lipschitz(std::size_t n, std::size_t population, double lipschitz, double diam, double t);

/// 2e sqrt(4 pi (1 - n/N) |X|^2 L^2), a bound on |E f - med f|.
double mean_median_gap(std::size_t n, std::size_t population, double lipschitz, double diam);

/// Clamp to a probability.
double as_probability(double bound);

/// Parameters for evaluating a bound by id. Unused fields are ignored.
struct BoundParams {
    std::size_t population = 0;  // N
    std::size_t n = 0;
    double diam = 1.0;
    double lipschitz = 1.0;
    double sum_c_sq = 1.0;
    double p = 0.0;
    std::size_t vertices = 0;
    double c = 1.0;
    double hs = 0.0;
    double op = 0.0;
    std::vector<DerivativeNorm> norms;
};

/// Stable ids: bounded_difference, convex_lipschitz, multilinear,
/// hanson_wright, triangles, triangles_relative, swor_bounded_difference,
/// serfling, serfling_original, kolmogorov, convex_lipschitz_median,
/// eigenvalue, swor_convex_distance, swor_convex_lipschitz.
const std::vector<std::string>& bound_ids();
bool is_known(const std::string& id);

/// Value of the bound at t = 0.
double prefactor(const std::string& id);

/// True for bounds whose absolute constant is unspecified (c must be
/// supplied for a quantitative comparison).
bool has_unspecified_constant(const std::string& id);

double evaluate(const std::string& id, const BoundParams& params, double t);

struct GridPoint {
    double t = 0.0;
    double bound = 0.0;
};

std::vector<GridPoint> evaluate_grid(const std::string& id, const BoundParams& params,
                                     const std::vector<double>& t_grid);

}  // namespace mslice::bounds
