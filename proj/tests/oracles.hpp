#pragma once

// Test-side reference implementations. Nothing here calls into the library
// except for the plain value types, so each oracle is an independent route
// to the quantity under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

/// All arrangements of the multiset with kappa[l] copies of values[l], in
/// lexicographic order, via std::next_permutation.
inline std::vector<std::vector<double>> arrangements(const std::vector<std::size_t>& kappa,
                                                     const std::vector<double>& values) {
    std::vector<double> w;
    for (std::size_t l = 0; l < kappa.size(); ++l) w.insert(w.end(), kappa[l], values[l]);
    std::sort(w.begin(), w.end());
    std::vector<std::vector<double>> out;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

inline double factorial(std::size_t n) {
    double r = 1.0;
    for (std::size_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
    return r;
}

/// M (M-1) ... (M-k+1) / (N (N-1) ... (N-k+1)).
inline double falling_ratio(std::size_t big_n, std::size_t m, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (m < i) return 0.0;
        r *= static_cast<double>(m - i) / static_cast<double>(big_n - i);
    }
    return r;
}

/// Pointwise (1/2N) sum_{i<j} (f(w) - f(tau_ij w))^2 by swapping entries and
/// looking the result up in a map.
inline std::vector<double> gamma_sq(const std::vector<std::vector<double>>& states, const std::vector<double>& f,
                                    bool positive_part = false) {
    std::map<std::vector<double>, std::size_t> index;
    for (std::size_t k = 0; k < states.size(); ++k) index[states[k]] = k;
    const std::size_t n = states.front().size();
    std::vector<double> out(states.size(), 0.0);
    for (std::size_t k = 0; k < states.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                auto s = states[k];
                std::swap(s[i], s[j]);
                double d = f[k] - f[index.at(s)];
                if (positive_part) d = std::max(d, 0.0);
                out[k] += d * d;
            }
        }
        out[k] /= 2.0 * static_cast<double>(n);
    }
    return out;
}

inline double mean(const std::vector<double>& f) {
    return std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
}

/// Largest singular value from the eigenvalues of A^T A.
inline double spectral_norm(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Roots of the characteristic polynomial of a symmetric 3x3 matrix
/// (trigonometric form of the cubic formula).
inline std::vector<double> symmetric3_eigenvalues(const Eigen::Matrix3d& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double q = a.trace() / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    if (p == 0.0) return {q, q, q};
    const Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / p;
    const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

/// Upper tail probability of a chi-square goodness-of-fit statistic against
/// equal cell probabilities.
inline double chi_square_uniform_pvalue(const std::vector<std::uint64_t>& counts) {
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (const auto c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Binomial coefficient in double precision.
inline double choose(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace oracle
