#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mslice/tensor.hpp"

namespace mslice {

/// A set partition of the tensor axes {0, ..., d-1}. Blocks are sorted
/// internally and ordered by their smallest element.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<std::vector<std::size_t>> blocks);

    static Partition finest(std::size_t d);
    static Partition coarsest(std::size_t d);

    std::size_t order() const noexcept { return order_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

    /// Every block of *this lies inside a block of other.
    bool refines(const Partition& other) const;

    /// 1-based set notation, e.g. "{{1,3},{2}}".
    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<std::vector<std::size_t>> blocks_;
    std::size_t order_ = 0;
};

/// All Bell(d) partitions of {0, ..., d-1}, 1 <= d <= 6.
std::vector<Partition> enumerate_partitions(std::size_t d);

struct NormOptions {
    std::size_t restarts = 20;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 100000;
};

struct NormResult {
    double value = 0.0;
    std::size_t restarts = 0;
    /// Spread between the best and the worst restart. Zero when every restart
    /// reached the same local maximum; not a certified optimality gap.
    double gap_estimate = 0.0;
    std::size_t iterations = 0;
    /// Maximizing unit vector per block (flattened block index, row-major).
    std::vector<std::vector<double>> vectors;
};

/// sup <A, x^(1) (x) ... (x) x^(k)> over unit vectors x^(l) on the flattened
/// blocks, by alternating maximization from random starts. The value is a
/// lower bound; it is exact for a single block.
NormResult partition_norm(const DenseTensor& a, const Partition& partition, const NormOptions& options = {});

/// As above, additionally starting from each supplied block-vector set.
NormResult partition_norm(const DenseTensor& a, const Partition& partition, const NormOptions& options,
                          const std::vector<std::vector<std::vector<double>>>& warm_starts);

double hs_norm(const DenseTensor& a);
NormResult operator_norm(const DenseTensor& a, const NormOptions& options = {});

struct PartitionNorm {
    Partition partition;
    NormResult result;
};

/// Norms for every partition of the axes, coarsening order. Each partition is
/// also warm-started from the optimizers of its refinements, so the computed
/// values respect refinement monotonicity up to solver tolerance.
std::vector<PartitionNorm> all_partition_norms(const DenseTensor& a, const NormOptions& options = {});

}  // namespace mslice
