#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mslice/multislice.hpp"
#include "mslice/tensor.hpp"

namespace mslice {

double sample_mean(const Configuration& prefix);

/// Unbiased sample standard deviation (1/(n-1) normalization).
double sample_std(const Configuration& prefix);

/// The same quantity through the pairwise form
/// (1/(n(n-1)) sum_{i<j} (w_i - w_j)^2)^{1/2}.
double sample_std_pairwise(const Configuration& prefix);

/// One-sided Kolmogorov statistic sup_t (F_prefix(t) - F_population(t)).
/// Both CDFs are right-continuous steps that jump only at population values,
/// so the supremum is the max of 0 (attained below x_1) and the differences
/// at the L population values.
double kolmogorov_stat(const Configuration& prefix, const MultisliceSpec& spec);

/// 0/1 edge indicator vector of a graph on n vertices, edges {i<j} in
/// lexicographic order. As a multislice: kappa = (N - M, M) over {0, 1}.
class EdgeConfiguration {
public:
    EdgeConfiguration(std::size_t vertices, Configuration edges);

    static std::size_t edge_count(std::size_t vertices) noexcept { return vertices * (vertices - 1) / 2; }
    /// 0-based edge index of {i, j}, i != j.
    static std::size_t edge_index(std::size_t vertices, std::size_t i, std::size_t j);
    static std::pair<std::size_t, std::size_t> edge(std::size_t vertices, std::size_t e);
    static MultisliceSpec spec(std::size_t vertices, std::size_t edges_present);

    std::size_t vertices() const noexcept { return vertices_; }
    std::size_t edges_present() const noexcept { return present_; }
    bool has_edge(std::size_t i, std::size_t j) const;
    const Configuration& config() const noexcept { return edges_; }

private:
    std::size_t vertices_;
    std::size_t present_ = 0;
    Configuration edges_;
};

std::uint64_t triangle_count(const EdgeConfiguration& graph);

/// binom(n,3) M(M-1)(M-2) / (N(N-1)(N-2)) for G(n, M), N = n(n-1)/2.
double expected_triangles(std::size_t vertices, std::size_t edges_present);

/// M(M-1)...(M-k+1) / (N(N-1)...(N-k+1)).
double falling_factorial_ratio(std::size_t population, std::size_t marked, std::size_t k);

/// E_kappa[w_{i1} ... w_{ik}] for pairwise distinct indices (k <= 6), by
/// summing over level assignments with multivariate hypergeometric weights.
double product_moment(const MultisliceSpec& spec, std::span<const std::size_t> indices);

struct Monomial {
    std::vector<std::size_t> indices;  // strictly increasing
    double coefficient = 0.0;
};

/// f(w) = a0 + sum_T a_T prod_{i in T} w_i with sparse strictly increasing
/// index sets T. Coefficients extend symmetrically and vanish on repeated
/// indices.
class MultilinearPolynomial {
public:
    explicit MultilinearPolynomial(std::size_t dimension, double constant = 0.0);

    /// Adds a_T to the coefficient of T. Indices are sorted; a repeated index
    /// makes the term non-multilinear and is rejected.
    void add_term(std::vector<std::size_t> indices, double coefficient);

    std::size_t dimension() const noexcept { return dimension_; }
    std::size_t degree() const noexcept;
    double constant() const noexcept { return constant_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }

    double operator()(const Configuration& w) const;

    /// The triangle count of G(n, M) as a degree-3 polynomial in the edges.
    static MultilinearPolynomial triangle_count(std::size_t vertices);

private:
    std::size_t dimension_;
    double constant_;
    std::vector<Monomial> terms_;
};

double eval(const MultilinearPolynomial& poly, const Configuration& w);

/// Formal gradient (first partial derivatives) at w.
std::vector<double> gradient(const MultilinearPolynomial& poly, const Configuration& w);

/// Formal Hessian at w; zero diagonal.
Eigen::MatrixXd hessian(const MultilinearPolynomial& poly, const Configuration& w);

/// Dense k-th derivative tensor at w (k <= 3, dimension <= 64).
DenseTensor gradient_tensor(const MultilinearPolynomial& poly, const Configuration& w, std::size_t k);

/// E_kappa of the k-th derivative tensor, via product moments.
DenseTensor expected_gradient_tensor(const MultilinearPolynomial& poly, const MultisliceSpec& spec,
                                     std::size_t k);

/// sum_{i<j} a_ij w_i w_j = w^T A w / 2 for symmetric A with zero diagonal.
double quadratic_form(const Eigen::MatrixXd& a, const Configuration& w);

/// max |lambda| over the eigenvalues of a symmetric matrix.
double largest_abs_eigenvalue(const Eigen::MatrixXd& x);

/// Symmetric m x m matrix from its upper triangle (i <= j) in row-major order,
/// m(m+1)/2 entries.
Eigen::MatrixXd symmetric_from_upper(const Configuration& entries, std::size_t dim);

}  // namespace mslice
