#include "mslice/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mslice {

double sample_mean(const Configuration& prefix) {
    if (prefix.empty()) throw std::invalid_argument("sample mean of an empty prefix");
    return std::accumulate(prefix.begin(), prefix.end(), 0.0) / static_cast<double>(prefix.size());
}

double sample_std(const Configuration& prefix) {
    if (prefix.size() < 2) throw std::invalid_argument("sample standard deviation needs n >= 2");
    const double mean = sample_mean(prefix);
    double ss = 0.0;
    for (const double x : prefix) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(prefix.size() - 1));
}

double sample_std_pairwise(const Configuration& prefix) {
    const std::size_t n = prefix.size();
    if (n < 2) throw std::invalid_argument("sample standard deviation needs n >= 2");
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) ss += (prefix[i] - prefix[j]) * (prefix[i] - prefix[j]);
    }
    return std::sqrt(ss / static_cast<double>(n * (n - 1)));
}

double kolmogorov_stat(const Configuration& prefix, const MultisliceSpec& spec) {
    if (prefix.empty()) throw std::invalid_argument("Kolmogorov statistic of an empty prefix");
    const auto counts = level_counts(spec, prefix);
    const double n = static_cast<double>(prefix.size());
    const double big_n = static_cast<double>(spec.size());
    std::size_t below_sample = 0;
    std::size_t below_population = 0;
    double sup = 0.0;
    for (std::size_t l = 0; l < spec.levels(); ++l) {
        below_sample += counts[l];
        below_population += spec.kappa()[l];
        sup = std::max(sup, static_cast<double>(below_sample) / n - static_cast<double>(below_population) / big_n);
    }
    return sup;
}

EdgeConfiguration::EdgeConfiguration(std::size_t vertices, Configuration edges)
    : vertices_(vertices), edges_(std::move(edges)) {
    if (vertices_ < 2) throw std::invalid_argument("a graph needs at least two vertices");
    if (edges_.size() != edge_count(vertices_)) throw std::invalid_argument("edge vector has the wrong length");
    for (const double x : edges_) {
        if (x == 1.0) ++present_;
        else if (x != 0.0) throw std::invalid_argument("edge indicators must be 0 or 1");
    }
}

std::size_t EdgeConfiguration::edge_index(std::size_t vertices, std::size_t i, std::size_t j) {
    if (i == j || i >= vertices || j >= vertices) throw IndexOutOfRange("invalid edge endpoints");
    if (i > j) std::swap(i, j);
    // edges before row i: sum_{r<i} (n-1-r)
    return i * (2 * vertices - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> EdgeConfiguration::edge(std::size_t vertices, std::size_t e) {
    for (std::size_t i = 0; i + 1 < vertices; ++i) {
        const std::size_t row = vertices - 1 - i;
        if (e < row) return {i, i + 1 + e};
        e -= row;
    }
    throw IndexOutOfRange("edge index out of range");
}

MultisliceSpec EdgeConfiguration::spec(std::size_t vertices, std::size_t edges_present) {
    const std::size_t n = edge_count(vertices);
    if (edges_present == 0 || edges_present >= n) {
        throw std::invalid_argument("G(n,M) as a multislice needs 0 < M < n(n-1)/2");
    }
    return MultisliceSpec::binary(n - edges_present, edges_present);
}

bool EdgeConfiguration::has_edge(std::size_t i, std::size_t j) const {
    return edges_[edge_index(vertices_, i, j)] == 1.0;
}

std::uint64_t triangle_count(const EdgeConfiguration& graph) {
    const std::size_t n = graph.vertices();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!graph.has_edge(i, j)) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (graph.has_edge(j, k) && graph.has_edge(i, k)) ++count;
            }
        }
    }
    return count;
}

double falling_factorial_ratio(std::size_t population, std::size_t marked, std::size_t k) {
    if (marked > population) throw std::invalid_argument("marked count exceeds population");
    if (k > population) throw std::invalid_argument("more distinct draws than population members");
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (marked < i + 1) return 0.0;
        r *= static_cast<double>(marked - i) / static_cast<double>(population - i);
    }
    return r;
}

double expected_triangles(std::size_t vertices, std::size_t edges_present) {
    const std::size_t n = EdgeConfiguration::edge_count(vertices);
    if (edges_present > n) throw std::invalid_argument("M exceeds the number of possible edges");
    if (vertices < 3) return 0.0;
    if (edges_present < 3) return 0.0;
    // integer numerator and denominator, one rounding at the division
    using u128 = unsigned __int128;
    const u128 triples = u128{vertices} * (vertices - 1) * (vertices - 2) / 6;
    const u128 m = edges_present;
    const u128 num = triples * m * (m - 1) * (m - 2);
    const u128 den = u128{n} * (n - 1) * (n - 2);
    return static_cast<double>(num) / static_cast<double>(den);
}

namespace {

double product_moment_of_order(const MultisliceSpec& spec, std::size_t k) {
    const std::size_t levels = spec.levels();
    std::vector<std::size_t> assign(k, 0);
    std::vector<std::size_t> used(levels, 0);
    double total = 0.0;
    // odometer over all L^k level assignments
    while (true) {
        std::fill(used.begin(), used.end(), 0);
        double prob = 1.0;
        double value = 1.0;
        for (std::size_t pos = 0; pos < k; ++pos) {
            const std::size_t l = assign[pos];
            const std::size_t avail = spec.kappa()[l] - std::min(used[l], spec.kappa()[l]);
            prob *= static_cast<double>(avail) / static_cast<double>(spec.size() - pos);
            ++used[l];
            value *= spec.value(l);
        }
        total += prob * value;
        std::size_t pos = 0;
        while (pos < k && ++assign[pos] == levels) assign[pos++] = 0;
        if (pos == k) break;
    }
    return total;
}

}  // namespace

double product_moment(const MultisliceSpec& spec, std::span<const std::size_t> indices) {
    if (indices.size() > 6) throw std::invalid_argument("product moments are limited to k <= 6");
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("product moment indices must be pairwise distinct");
    }
    if (!sorted.empty() && sorted.back() >= spec.size()) throw IndexOutOfRange("product moment index out of range");
    if (sorted.empty()) return 1.0;
    return product_moment_of_order(spec, sorted.size());
}

MultilinearPolynomial::MultilinearPolynomial(std::size_t dimension, double constant)
    : dimension_(dimension), constant_(constant) {}

void MultilinearPolynomial::add_term(std::vector<std::size_t> indices, double coefficient) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw std::invalid_argument("repeated index: term is not multilinear");
    }
    if (!indices.empty() && indices.back() >= dimension_) throw IndexOutOfRange("polynomial index out of range");
    if (indices.empty()) {
        constant_ += coefficient;
        return;
    }
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), indices,
                                     [](const Monomial& m, const std::vector<std::size_t>& key) {
                                         return m.indices < key;
                                     });
    if (it != terms_.end() && it->indices == indices) {
        it->coefficient += coefficient;
    } else {
        terms_.insert(it, Monomial{std::move(indices), coefficient});
    }
}

std::size_t MultilinearPolynomial::degree() const noexcept {
    std::size_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.indices.size());
    return d;
}

double MultilinearPolynomial::operator()(const Configuration& w) const {
    if (w.size() != dimension_) throw std::invalid_argument("configuration length does not match polynomial");
    double total = constant_;
    for (const auto& t : terms_) {
        double p = t.coefficient;
        for (const auto i : t.indices) p *= w[i];
        total += p;
    }
    return total;
}

MultilinearPolynomial MultilinearPolynomial::triangle_count(std::size_t vertices) {
    MultilinearPolynomial poly(EdgeConfiguration::edge_count(vertices));
    for (std::size_t i = 0; i < vertices; ++i) {
        for (std::size_t j = i + 1; j < vertices; ++j) {
            for (std::size_t k = j + 1; k < vertices; ++k) {
                poly.add_term({EdgeConfiguration::edge_index(vertices, i, j),
                               EdgeConfiguration::edge_index(vertices, j, k),
                               EdgeConfiguration::edge_index(vertices, i, k)},
                              1.0);
            }
        }
    }
    return poly;
}

double eval(const MultilinearPolynomial& poly, const Configuration& w) {
    return poly(w);
}

std::vector<double> gradient(const MultilinearPolynomial& poly, const Configuration& w) {
    if (w.size() != poly.dimension()) throw std::invalid_argument("configuration length does not match polynomial");
    std::vector<double> g(poly.dimension(), 0.0);
    for (const auto& t : poly.terms()) {
        for (std::size_t a = 0; a < t.indices.size(); ++a) {
            double p = t.coefficient;
            for (std::size_t b = 0; b < t.indices.size(); ++b) {
                if (b != a) p *= w[t.indices[b]];
            }
            g[t.indices[a]] += p;
        }
    }
    return g;
}

Eigen::MatrixXd hessian(const MultilinearPolynomial& poly, const Configuration& w) {
    if (w.size() != poly.dimension()) throw std::invalid_argument("configuration length does not match polynomial");
    const auto n = static_cast<Eigen::Index>(poly.dimension());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : poly.terms()) {
        const std::size_t m = t.indices.size();
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) {
                double p = t.coefficient;
                for (std::size_t c = 0; c < m; ++c) {
                    if (c != a && c != b) p *= w[t.indices[c]];
                }
                const auto i = static_cast<Eigen::Index>(t.indices[a]);
                const auto j = static_cast<Eigen::Index>(t.indices[b]);
                h(i, j) += p;
                h(j, i) += p;
            }
        }
    }
    return h;
}

namespace {

// Calls visit(subset_positions) for every k-subset of {0..m-1}.
template <typename Visit>
void for_each_subset(std::size_t m, std::size_t k, Visit&& visit) {
    if (k > m) return;
    std::vector<std::size_t> pos(k);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
        visit(pos);
        std::size_t r = k;
        while (r > 0 && pos[r - 1] == m - k + r - 1) --r;
        if (r == 0) return;
        ++pos[r - 1];
        for (std::size_t s = r; s < k; ++s) pos[s] = pos[s - 1] + 1;
    }
}

// Accumulates a symmetric k-th derivative tensor. `rest_factor(term, rest)`
// returns the factor contributed by the indices not differentiated.
template <typename RestFactor>
DenseTensor derivative_tensor(const MultilinearPolynomial& poly, std::size_t k, RestFactor&& rest_factor) {
    if (k < 1) throw std::invalid_argument("derivative order must be at least 1");
    if (k > poly.degree()) throw std::invalid_argument("derivative order exceeds polynomial degree");
    if (k > 3 || poly.dimension() > 64) {
        throw std::invalid_argument("dense derivative tensors are limited to k <= 3 and dimension <= 64");
    }
    DenseTensor out = DenseTensor::cube(k, poly.dimension());
    std::vector<std::size_t> rest;
    std::vector<std::size_t> idx(k);
    for (const auto& t : poly.terms()) {
        const std::size_t m = t.indices.size();
        for_each_subset(m, k, [&](const std::vector<std::size_t>& chosen) {
            rest.clear();
            std::size_t c = 0;
            for (std::size_t a = 0; a < m; ++a) {
                if (c < k && chosen[c] == a) { ++c; continue; }
                rest.push_back(t.indices[a]);
            }
            const double v = t.coefficient * rest_factor(rest);
            std::vector<std::size_t> perm(k);
            for (std::size_t a = 0; a < k; ++a) perm[a] = t.indices[chosen[a]];
            // all k! orderings; the chosen indices are distinct and sorted
            do {
                out(perm) += v;
            } while (std::next_permutation(perm.begin(), perm.end()));
        });
    }
    return out;
}

}  // namespace

DenseTensor gradient_tensor(const MultilinearPolynomial& poly, const Configuration& w, std::size_t k) {
    if (w.size() != poly.dimension()) throw std::invalid_argument("configuration length does not match polynomial");
    return derivative_tensor(poly, k, [&](const std::vector<std::size_t>& rest) {
        double p = 1.0;
        for (const auto i : rest) p *= w[i];
        return p;
    });
}

DenseTensor expected_gradient_tensor(const MultilinearPolynomial& poly, const MultisliceSpec& spec,
                                     std::size_t k) {
    if (spec.size() != poly.dimension()) throw std::invalid_argument("spec length does not match polynomial");
    std::map<std::size_t, double> moments;
    return derivative_tensor(poly, k, [&](const std::vector<std::size_t>& rest) {
        auto it = moments.find(rest.size());
        if (it == moments.end()) it = moments.emplace(rest.size(), product_moment(spec, rest)).first;
        return it->second;
    });
}

double quadratic_form(const Eigen::MatrixXd& a, const Configuration& w) {
    if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != w.size()) {
        throw std::invalid_argument("quadratic form: matrix shape does not match configuration");
    }
    double total = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 0.0) throw std::invalid_argument("quadratic form: diagonal must vanish");
        for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
            if (a(i, j) != a(j, i)) throw std::invalid_argument("quadratic form: matrix must be symmetric");
            total += a(i, j) * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
        }
    }
    return total;
}

double largest_abs_eigenvalue(const Eigen::MatrixXd& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("eigenvalue: matrix must be square");
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (!x.isApprox(x.transpose(), 1e-12) && (x - x.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("eigenvalue: matrix must be symmetric");
    }
    if (x.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(x, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd symmetric_from_upper(const Configuration& entries, std::size_t dim) {
    if (entries.size() != dim * (dim + 1) / 2) throw std::invalid_argument("upper triangle has the wrong length");
    const auto m = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd x(m, m);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
            x(i, j) = entries[k];
            x(j, i) = entries[k];
            ++k;
        }
    }
    return x;
}

}  // namespace mslice
