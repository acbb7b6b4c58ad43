#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mslice/multislice.hpp"
#include "mslice/report.hpp"

namespace mslice {

/// An explicit finite set A of configurations of equal length.
class SubsetIndicator {
public:
    explicit SubsetIndicator(std::vector<Configuration> members);

    std::size_t size() const noexcept { return members_.size(); }
    std::size_t length() const noexcept { return members_.front().size(); }
    const std::vector<Configuration>& members() const noexcept { return members_; }
    const Configuration& member(std::size_t a) const { return members_[a]; }
    bool contains(const Configuration& config) const;

    /// B[a][k] = 1 if member a differs from omega at coordinate k.
    std::vector<std::vector<std::uint8_t>> disagreement(const Configuration& omega) const;

private:
    std::vector<Configuration> members_;
};

/// min over members of sum_k |alpha_k| 1{a_k != omega_k}; alpha must have unit
/// Euclidean norm.
double alpha_distance(const Configuration& omega, const SubsetIndicator& a, const std::vector<double>& alpha);

struct ConvexDistanceResult {
    double value = 0.0;        // sqrt of the primal objective
    double gap = 0.0;          // duality gap on the squared objective
    std::size_t iterations = 0;
    std::vector<double> weights;  // the minimizing measure over members
};

/// Convex distance d_T(omega, A) = min over probability measures nu on A of
/// |B^T nu|_2. Solved by Frank-Wolfe with away steps and exact line search
/// on the squared norm, stopping once the duality gap is <= tol.
ConvexDistanceResult convex_distance(const Configuration& omega, const SubsetIndicator& a, double tol = 1e-9,
                                     std::size_t max_iterations = 1'000'000);

/// Minimum of |B^T nu|_2 over the simplex grid with step 1/grid (|A| <= 5).
/// An upper bound on d_T used as a test oracle.
double convex_distance_bruteforce(const Configuration& omega, const SubsetIndicator& a, std::size_t grid);

/// Checks Gamma+(f)^2 <= f and |f(w) - f(tau_ij w)| <= 1 for f = d_T(., A)^2 / 4
/// at every state of the space. The lhs/rhs pair is the worst of both
/// conditions (rhs - lhs is the smaller slack).
CheckReport check_self_bounding(const StateSpace& space, const SubsetIndicator& a, double tol = 1e-8);

/// True if A is closed under permutations of coordinates.
bool is_symmetric_set(const SubsetIndicator& a);

/// A together with every coordinate permutation of its members.
SubsetIndicator symmetric_closure(const SubsetIndicator& a);

/// Exact check of P(d_T(., A) >= t) <= e exp(-t^2 / (16 (1 - n/N))) on the
/// prefix space, for a symmetric A of mass >= 1/2 and every t in t_grid.
/// Non-symmetric sets, or sets of mass < 1/2, raise std::invalid_argument.
CheckReport check_swor_convex_distance(const PrefixSpace& space, const SubsetIndicator& a,
                                       const std::vector<double>& t_grid, double tol = 1e-9);

}  // namespace mslice
