#include "mslice/tensor_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mslice/random.hpp"

namespace mslice {

Partition::Partition(std::vector<std::vector<std::size_t>> blocks) : blocks_(std::move(blocks)) {
    std::vector<bool> seen;
    for (auto& b : blocks_) {
        if (b.empty()) throw std::invalid_argument("partition blocks must be nonempty");
        std::sort(b.begin(), b.end());
        for (const auto a : b) {
            if (a >= seen.size()) seen.resize(a + 1, false);
            if (seen[a]) throw std::invalid_argument("partition blocks must be disjoint");
            seen[a] = true;
        }
    }
    if (blocks_.empty() || std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("partition blocks must cover 0..d-1");
    }
    order_ = seen.size();
    std::sort(blocks_.begin(), blocks_.end());
}

Partition Partition::finest(std::size_t d) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t a = 0; a < d; ++a) blocks.push_back({a});
    return Partition(std::move(blocks));
}

Partition Partition::coarsest(std::size_t d) {
    std::vector<std::size_t> all(d);
    for (std::size_t a = 0; a < d; ++a) all[a] = a;
    return Partition({all});
}

bool Partition::refines(const Partition& other) const {
    if (other.order_ != order_) return false;
    return std::all_of(blocks_.begin(), blocks_.end(), [&](const auto& b) {
        return std::any_of(other.blocks_.begin(), other.blocks_.end(), [&](const auto& c) {
            return std::includes(c.begin(), c.end(), b.begin(), b.end());
        });
    });
}

std::string Partition::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t l = 0; l < blocks_.size(); ++l) {
        if (l) out << ',';
        out << '{';
        for (std::size_t m = 0; m < blocks_[l].size(); ++m) {
            if (m) out << ',';
            out << blocks_[l][m] + 1;
        }
        out << '}';
    }
    out << '}';
    return out.str();
}

std::vector<Partition> enumerate_partitions(std::size_t d) {
    if (d < 1 || d > 6) throw std::invalid_argument("partitions are enumerated for 1 <= d <= 6 only");
    // restricted growth strings: rgs[0] = 0, rgs[a] <= 1 + max(rgs[0..a-1])
    std::vector<std::size_t> rgs(d, 0);
    std::vector<Partition> out;
    while (true) {
        const std::size_t k = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<std::size_t>> blocks(k);
        for (std::size_t a = 0; a < d; ++a) blocks[rgs[a]].push_back(a);
        out.emplace_back(std::move(blocks));

        std::size_t a = d;
        while (a-- > 1) {
            const std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + static_cast<long>(a));
            if (rgs[a] <= prefix_max) {
                ++rgs[a];
                std::fill(rgs.begin() + static_cast<long>(a) + 1, rgs.end(), 0);
                break;
            }
        }
        if (a == 0 || d == 1) break;
    }
    return out;
}

namespace {

// Nonzero entries with their coordinates in each flattened block.
struct BlockedTensor {
    std::vector<std::size_t> dims;
    std::vector<double> values;
    std::vector<std::size_t> coords;  // values.size() x dims.size()
};

BlockedTensor block_tensor(const DenseTensor& a, const Partition& partition) {
    if (partition.order() != a.order()) throw std::invalid_argument("partition order does not match tensor order");
    const auto& shape = a.shape();
    const std::size_t k = partition.block_count();
    BlockedTensor bt;
    bt.dims.assign(k, 1);
    for (std::size_t l = 0; l < k; ++l) {
        for (const auto ax : partition.blocks()[l]) bt.dims[l] *= shape[ax];
    }
    const auto data = a.data();
    for (std::size_t flat = 0; flat < data.size(); ++flat) {
        if (data[flat] == 0.0) continue;
        const auto idx = a.unflatten(flat);
        bt.values.push_back(data[flat]);
        for (std::size_t l = 0; l < k; ++l) {
            std::size_t c = 0;
            for (const auto ax : partition.blocks()[l]) c = c * shape[ax] + idx[ax];
            bt.coords.push_back(c);
        }
    }
    return bt;
}

double normalize(std::vector<double>& v) {
    double ss = 0.0;
    for (const double x : v) ss += x * x;
    const double nrm = std::sqrt(ss);
    if (nrm > 0.0) {
        for (auto& x : v) x /= nrm;
    }
    return nrm;
}

struct Ascent {
    double value = 0.0;
    std::size_t iterations = 0;
    std::vector<std::vector<double>> vectors;
};

Ascent ascend(const BlockedTensor& bt, std::vector<std::vector<double>> x, const NormOptions& options) {
    const std::size_t k = bt.dims.size();
    const std::size_t entries = bt.values.size();
    Ascent out;
    double previous = -1.0;
    std::vector<double> v;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        double value = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            v.assign(bt.dims[l], 0.0);
            for (std::size_t e = 0; e < entries; ++e) {
                const std::size_t* c = &bt.coords[e * k];
                double p = bt.values[e];
                for (std::size_t m = 0; m < k; ++m) {
                    if (m != l) p *= x[m][c[m]];
                }
                v[c[l]] += p;
            }
            value = normalize(v);
            if (value == 0.0) {
                out.iterations = it + 1;
                out.vectors = std::move(x);
                return out;
            }
            x[l] = v;
        }
        out.iterations = it + 1;
        if (previous >= 0.0 && std::abs(value - previous) <= options.tol * value) {
            out.value = value;
            break;
        }
        previous = value;
        out.value = value;
    }
    out.vectors = std::move(x);
    return out;
}

}  // namespace

double hs_norm(const DenseTensor& a) {
    double ss = 0.0;
    for (const double v : a.data()) ss += v * v;
    return std::sqrt(ss);
}

NormResult partition_norm(const DenseTensor& a, const Partition& partition, const NormOptions& options) {
    return partition_norm(a, partition, options, {});
}

NormResult partition_norm(const DenseTensor& a, const Partition& partition, const NormOptions& options,
                          const std::vector<std::vector<std::vector<double>>>& warm_starts) {
    const BlockedTensor bt = block_tensor(a, partition);
    const std::size_t k = bt.dims.size();
    NormResult result;
    if (k == 1) {
        result.value = hs_norm(a);
        result.restarts = 1;
        std::vector<double> v(a.data().begin(), a.data().end());
        normalize(v);
        result.vectors = {std::move(v)};
        return result;
    }
    if (bt.values.empty()) {
        result.restarts = 0;
        for (const auto d : bt.dims) {
            std::vector<double> v(d, 0.0);
            v[0] = 1.0;
            result.vectors.push_back(std::move(v));
        }
        return result;
    }

    double worst = std::numeric_limits<double>::infinity();
    result.value = -1.0;
    auto consider = [&](Ascent&& run) {
        ++result.restarts;
        result.iterations += run.iterations;
        worst = std::min(worst, run.value);
        if (run.value > result.value) {
            result.value = run.value;
            result.vectors = std::move(run.vectors);
        }
    };

    for (const auto& start : warm_starts) {
        if (start.size() != k) throw std::invalid_argument("warm start has the wrong number of blocks");
        for (std::size_t l = 0; l < k; ++l) {
            if (start[l].size() != bt.dims[l]) throw std::invalid_argument("warm start has the wrong block size");
        }
        consider(ascend(bt, start, options));
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t r = 0; r < options.restarts; ++r) {
        RandomStream rng(options.seed, r);
        std::vector<std::vector<double>> x(k);
        for (std::size_t l = 0; l < k; ++l) {
            x[l].resize(bt.dims[l]);
            do {
                for (auto& xi : x[l]) xi = gauss(rng);
            } while (normalize(x[l]) == 0.0);
        }
        consider(ascend(bt, std::move(x), options));
    }
    if (result.restarts == 0) throw std::invalid_argument("partition_norm needs at least one restart");
    result.gap_estimate = result.value - worst;
    return result;
}

NormResult operator_norm(const DenseTensor& a, const NormOptions& options) {
    return partition_norm(a, Partition::finest(a.order()), options);
}

namespace {

// Vectors for the blocks of `coarse`, built as outer products of the block
// vectors of a refinement `fine`.
std::vector<std::vector<double>> merge_vectors(const Partition& fine, const std::vector<std::vector<double>>& x,
                                               const Partition& coarse, const std::vector<std::size_t>& shape) {
    std::vector<std::vector<double>> out;
    for (const auto& cb : coarse.blocks()) {
        std::size_t dim = 1;
        for (const auto ax : cb) dim *= shape[ax];
        std::vector<double> v(dim, 1.0);
        std::vector<std::size_t> idx(cb.size());
        for (std::size_t flat = 0; flat < dim; ++flat) {
            std::size_t rem = flat;
            for (std::size_t m = cb.size(); m-- > 0;) {
                idx[m] = rem % shape[cb[m]];
                rem /= shape[cb[m]];
            }
            for (std::size_t l = 0; l < fine.block_count(); ++l) {
                const auto& fb = fine.blocks()[l];
                if (!std::includes(cb.begin(), cb.end(), fb.begin(), fb.end())) continue;
                std::size_t c = 0;
                for (const auto ax : fb) {
                    const auto pos = static_cast<std::size_t>(std::find(cb.begin(), cb.end(), ax) - cb.begin());
                    c = c * shape[ax] + idx[pos];
                }
                v[flat] *= x[l][c];
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::vector<PartitionNorm> all_partition_norms(const DenseTensor& a, const NormOptions& options) {
    auto partitions = enumerate_partitions(a.order());
    std::stable_sort(partitions.begin(), partitions.end(), [](const Partition& p, const Partition& q) {
        return p.block_count() > q.block_count();
    });
    std::vector<PartitionNorm> out;
    for (const auto& p : partitions) {
        std::vector<std::vector<std::vector<double>>> warm;
        for (const auto& done : out) {
            if (done.partition.refines(p) && !done.result.vectors.empty()) {
                warm.push_back(merge_vectors(done.partition, done.result.vectors, p, a.shape()));
            }
        }
        out.push_back({p, partition_norm(a, p, options, warm)});
    }
    return out;
}

}  // namespace mslice
