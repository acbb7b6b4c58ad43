#include "mslice/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mslice::bounds {

namespace {

void require_t(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be a finite nonnegative number");
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be positive");
}

double sampling_factor(std::size_t n, std::size_t population) {
    if (population == 0) throw std::invalid_argument("population size must be positive");
    if (n > population) throw std::invalid_argument("sample size exceeds population");
    return 1.0 - static_cast<double>(n) / static_cast<double>(population);
}

// prefactor * exp(-t^2 / denom), with denom == 0 meaning a point mass.
double gaussian_tail(double prefactor, double t, double denom) {
    if (denom <= 0.0) return t > 0.0 ? 0.0 : prefactor;
    return prefactor * std::exp(-t * t / denom);
}

}  // namespace

double bounded_difference(std::size_t population, double sum_c_sq, double t) {
    require_t(t);
    if (population == 0) throw std::invalid_argument("population size must be positive");
    if (sum_c_sq < 0.0) throw std::invalid_argument("sum of squared differences must be nonnegative");
    if (sum_c_sq == 0.0) {
        if (t > 0.0) throw std::invalid_argument("bounded_difference needs a positive sum for t > 0");
        return 1.0;
    }
    return gaussian_tail(1.0, t, 4.0 * sum_c_sq / static_cast<double>(population));
}

double convex_lipschitz(double diam, double t) {
    require_t(t);
    require_positive(diam, "diameter");
    return gaussian_tail(1.0, t, 16.0 * diam * diam);
}

double multilinear(double t, const std::vector<DerivativeNorm>& norms, double diam, double c) {
    require_t(t);
    require_positive(diam, "diameter");
    require_positive(c, "constant c");
    if (norms.empty()) throw std::invalid_argument("multilinear bound needs at least one norm");
    double exponent = std::numeric_limits<double>::infinity();
    for (const auto& nm : norms) {
        if (nm.order < 1 || nm.blocks < 1 || nm.blocks > nm.order) {
            throw std::invalid_argument("derivative norm has an invalid order/partition size");
        }
        if (nm.value < 0.0) throw std::invalid_argument("norms must be nonnegative");
        if (nm.value == 0.0) continue;
        const double scale = std::pow(diam, static_cast<double>(nm.order)) * nm.value;
        exponent = std::min(exponent, std::pow(t / scale, 2.0 / static_cast<double>(nm.blocks)));
    }
    if (std::isinf(exponent)) return t > 0.0 ? 0.0 : 2.0;
    return 2.0 * std::exp(-c * exponent);
}

double hanson_wright(double t, double hs, double op, double diam, double c) {
    return multilinear(t, {{2, 1, hs}, {2, 2, op}}, diam, c);
}

double triangles(std::size_t vertices, double p, double t, double c) {
    require_t(t);
    require_positive(c, "constant c");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
    const double n = static_cast<double>(vertices);
    const double n3 = n * n * n;
    const double a = t * t / (n3 + p * p * n3 + std::pow(p, 4) * n3 * n);
    const double b = t / (std::sqrt(n) + p * n);
    const double e = std::pow(t, 2.0 / 3.0);
    return 2.0 * std::exp(-c * std::min({a, b, e}));
}

double triangles_relative(std::size_t vertices, double p, double eps, double c) {
    require_t(eps);
    require_positive(c, "constant c");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
    const double n = static_cast<double>(vertices);
    const double a = eps * eps * n * n * n * std::pow(p, 6);
    const double b = std::min(eps * eps, std::pow(eps, 2.0 / 3.0)) * n * n * p * p;
    return 2.0 * std::exp(-c * std::min(a, b));
}

double swor_bounded_difference(std::size_t n, std::size_t population, double sum_ci_sq, double t) {
    require_t(t);
    const double frac = sampling_factor(n, population);
    if (sum_ci_sq < 0.0) throw std::invalid_argument("sum of squared differences must be nonnegative");
    if (sum_ci_sq == 0.0 && frac > 0.0 && t > 0.0) {
        throw std::invalid_argument("swor_bounded_difference needs a positive sum for t > 0");
    }
    return gaussian_tail(1.0, t, 4.0 * frac * sum_ci_sq);
}

double serfling(std::size_t n, std::size_t population, double diam, double t) {
    require_t(t);
    require_positive(diam, "diameter");
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    const double frac = sampling_factor(n, population);
    return gaussian_tail(1.0, t, 4.0 * frac * diam * diam / static_cast<double>(n));
}

double serfling_original(std::size_t n, std::size_t population, double diam, double t) {
    require_t(t);
    require_positive(diam, "diameter");
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    sampling_factor(n, population);
    const double frac = 1.0 - static_cast<double>(n - 1) / static_cast<double>(population);
    return gaussian_tail(1.0, t, frac * diam * diam / (2.0 * static_cast<double>(n)));
}

double kolmogorov(std::size_t n, std::size_t population, double t) {
    require_t(t);
    return gaussian_tail(2.0, t, 4.0 * sampling_factor(n, population));
}

double convex_lipschitz_median(double lipschitz, double diam, double t) {
    require_t(t);
    require_positive(lipschitz, "Lipschitz constant");
    require_positive(diam, "diameter");
    return gaussian_tail(4.0, t, 144.0 * lipschitz * lipschitz * diam * diam);
}

double eigenvalue(double diam, double t) {
    return convex_lipschitz_median(1.0, diam, t);
}

double swor_convex_distance(std::size_t n, std::size_t population, double t) {
    require_t(t);
    return gaussian_tail(std::numbers::e, t, 16.0 * sampling_factor(n, population));
}

double swor_convex_lipschitz(std::size_t n, std::size_t population, double lipschitz, double diam, double t) {
    require_t(t);
    require_positive(lipschitz, "Lipschitz constant");
    require_positive(diam, "diameter");
    const double frac = sampling_factor(n, population);
    return gaussian_tail(2.0 * std::numbers::e, t, 16.0 * frac * lipschitz * lipschitz * diam * diam);
}

double mean_median_gap(std::size_t n, std::size_t population, double lipschitz, double diam) {
    if (lipschitz < 0.0 || diam < 0.0) throw std::invalid_argument("L and |X| must be nonnegative");
    const double frac = sampling_factor(n, population);
    return 2.0 * std::numbers::e * std::sqrt(4.0 * std::numbers::pi * frac * diam * diam * lipschitz * lipschitz);
}

double as_probability(double bound) {
    return std::min(bound, 1.0);
}

const std::vector<std::string>& bound_ids() {
    static const std::vector<std::string> ids = {
        "bounded_difference",   "convex_lipschitz", "multilinear",       "hanson_wright",
        "triangles",            "triangles_relative", "swor_bounded_difference", "serfling",
        "serfling_original",    "kolmogorov",       "convex_lipschitz_median", "eigenvalue",
        "swor_convex_distance", "swor_convex_lipschitz"};
    return ids;
}

bool is_known(const std::string& id) {
    const auto& ids = bound_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

double prefactor(const std::string& id) {
    if (!is_known(id)) throw std::invalid_argument("unknown bound id: " + id);
    if (id == "multilinear" || id == "hanson_wright" || id == "triangles" || id == "triangles_relative" ||
        id == "kolmogorov") {
        return 2.0;
    }
    if (id == "convex_lipschitz_median" || id == "eigenvalue") return 4.0;
    if (id == "swor_convex_distance") return std::numbers::e;
    if (id == "swor_convex_lipschitz") return 2.0 * std::numbers::e;
    return 1.0;
}

bool has_unspecified_constant(const std::string& id) {
    return id == "multilinear" || id == "hanson_wright" || id == "triangles" || id == "triangles_relative";
}

double evaluate(const std::string& id, const BoundParams& q, double t) {
    if (id == "bounded_difference") return bounded_difference(q.population, q.sum_c_sq, t);
    if (id == "convex_lipschitz") return convex_lipschitz(q.diam, t);
    if (id == "multilinear") return multilinear(t, q.norms, q.diam, q.c);
    if (id == "hanson_wright") return hanson_wright(t, q.hs, q.op, q.diam, q.c);
    if (id == "triangles") return triangles(q.vertices, q.p, t, q.c);
    if (id == "triangles_relative") return triangles_relative(q.vertices, q.p, t, q.c);
    if (id == "swor_bounded_difference") return swor_bounded_difference(q.n, q.population, q.sum_c_sq, t);
    if (id == "serfling") return serfling(q.n, q.population, q.diam, t);
    if (id == "serfling_original") return serfling_original(q.n, q.population, q.diam, t);
    if (id == "kolmogorov") return kolmogorov(q.n, q.population, t);
    if (id == "convex_lipschitz_median") return convex_lipschitz_median(q.lipschitz, q.diam, t);
    if (id == "eigenvalue") return eigenvalue(q.diam, t);
    if (id == "swor_convex_distance") return swor_convex_distance(q.n, q.population, t);
    if (id == "swor_convex_lipschitz") return swor_convex_lipschitz(q.n, q.population, q.lipschitz, q.diam, t);
    throw std::invalid_argument("unknown bound id: " + id);
}

std::vector<GridPoint> evaluate_grid(const std::string& id, const BoundParams& params,
                                     const std::vector<double>& t_grid) {
    std::vector<GridPoint> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) out.push_back({t, evaluate(id, params, t)});
    return out;
}

}  // namespace mslice::bounds
