#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mslice/random.hpp"

namespace mslice {

/// Raised when a state space (or a count of it) exceeds the requested cap or
/// the 64-bit integer range.
class EnumerationTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// The triple (L, kappa, values) defining a multislice: length-N sequences in
/// which values[l] appears exactly kappa[l] times.
class MultisliceSpec {
public:
    MultisliceSpec(std::vector<std::size_t> kappa, std::vector<double> values);

    /// kappa = (zeros, ones) over the values {0, 1}.
    static MultisliceSpec binary(std::size_t zeros, std::size_t ones);

    /// kappa = (1, ..., 1) over the values {1, ..., n}: the symmetric group.
    static MultisliceSpec permutations(std::size_t n);

    std::size_t levels() const noexcept { return kappa_.size(); }
    std::size_t size() const noexcept { return size_; }
    const std::vector<std::size_t>& kappa() const noexcept { return kappa_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double value(std::size_t level) const { return values_.at(level); }
    double diameter() const noexcept { return values_.back() - values_.front(); }
    std::size_t kappa_min() const noexcept;

    /// Population mean sum_l kappa_l x_l / N.
    double mean() const noexcept;

    /// Level index of an exact value; throws std::invalid_argument for a value
    /// outside the spec.
    std::size_t level_of(double x) const;
    std::optional<std::size_t> find_level(double x) const noexcept;

    std::string describe() const;

    friend bool operator==(const MultisliceSpec&, const MultisliceSpec&) = default;

private:
    std::vector<std::size_t> kappa_;
    std::vector<double> values_;
    std::size_t size_ = 0;
};

/// A full arrangement of a multislice, or a prefix of one.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<double> entries) : entries_(std::move(entries)) {}
    Configuration(std::initializer_list<double> entries) : entries_(entries) {}

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    double operator[](std::size_t i) const { return entries_[i]; }
    double& operator[](std::size_t i) { return entries_[i]; }
    std::span<const double> entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    Configuration prefix(std::size_t n) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;

private:
    std::vector<double> entries_;
};

/// Multinomial coefficient (sum c)! / prod(c!). Throws EnumerationTooLarge on
/// 64-bit overflow.
std::uint64_t multinomial(std::span<const std::size_t> counts);

/// |Omega_kappa| = N! / (kappa_1! ... kappa_L!).
std::uint64_t cardinality(const MultisliceSpec& spec);

/// Per-level counts of a configuration or prefix. Entries outside the spec's
/// value set raise std::invalid_argument.
std::vector<std::size_t> level_counts(const MultisliceSpec& spec, const Configuration& config);

bool is_member(const MultisliceSpec& spec, const Configuration& config);
bool is_prefix_member(const MultisliceSpec& spec, const Configuration& prefix);

/// Sorted arrangement (x_1, ..., x_1, x_2, ..., x_L).
Configuration canonical_arrangement(const MultisliceSpec& spec);

/// Every element of Omega_kappa exactly once, lexicographic in level indices.
std::vector<Configuration> enumerate(const MultisliceSpec& spec,
                                     std::uint64_t cap = kDefaultEnumerationCap);

/// Exactly uniform draw from Omega_kappa (forward Fisher-Yates shuffle of the
/// canonical arrangement).
Configuration sample_uniform(const MultisliceSpec& spec, RandomStream& rng);

/// First n entries of a uniform shuffle. The forward shuffle fixes position k
/// at step k, so this equals sample_uniform(spec, rng).prefix(n) for an rng in
/// the same state.
Configuration sample_without_replacement(const MultisliceSpec& spec, std::size_t n,
                                         RandomStream& rng);

/// tau_ij: swaps entries i and j (0-based, i != j).
Configuration switch_entries(const Configuration& config, std::size_t i, std::size_t j);

/// Values x_l such that replacing entry i of the prefix by x_l keeps every
/// level count within kappa. Includes the current value.
std::vector<double> admissible_replacements(const Configuration& prefix, const MultisliceSpec& spec,
                                            std::size_t i);

/// Indexed enumeration of Omega_kappa, with a precomputed switch table.
/// Intended for exhaustive checks, so the whole space lives in memory.
class StateSpace {
public:
    explicit StateSpace(MultisliceSpec spec, std::uint64_t cap = kDefaultEnumerationCap);

    const MultisliceSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return states_.size(); }
    std::size_t length() const noexcept { return spec_.size(); }
    const Configuration& state(std::size_t k) const { return states_[k]; }
    const std::vector<Configuration>& states() const noexcept { return states_; }

    /// Level index vector of state k.
    std::span<const std::uint8_t> levels(std::size_t k) const;

    /// Position of a configuration in enumeration order; throws
    /// std::invalid_argument for non-members.
    std::size_t index_of(const Configuration& config) const;
    std::optional<std::size_t> find(std::span<const std::uint8_t> levels) const;

    std::size_t pair_count() const noexcept { return pairs_.size(); }
    /// Pair p as (i, j) with i < j, ordered lexicographically.
    std::pair<std::size_t, std::size_t> pair(std::size_t p) const { return pairs_[p]; }
    /// Index of tau_ij applied to state k, where (i, j) = pair(p).
    std::size_t switched(std::size_t k, std::size_t p) const { return switch_[k * pairs_.size() + p]; }

private:
    MultisliceSpec spec_;
    std::vector<Configuration> states_;
    std::vector<std::uint8_t> levels_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<std::uint32_t> switch_;
};

/// Indexed enumeration of the prefix space Omega_{kappa,n} = pr_n(Omega_kappa)
/// with the push-forward weights (number of completions) / |Omega_kappa|.
class PrefixSpace {
public:
    PrefixSpace(MultisliceSpec spec, std::size_t n, std::uint64_t cap = kDefaultEnumerationCap);

    const MultisliceSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return prefixes_.size(); }
    std::size_t length() const noexcept { return n_; }
    const Configuration& prefix(std::size_t k) const { return prefixes_[k]; }
    double weight(std::size_t k) const { return weights_[k]; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::span<const std::uint8_t> levels(std::size_t k) const;

    std::size_t index_of(const Configuration& prefix) const;
    std::optional<std::size_t> find(std::span<const std::uint8_t> levels) const;

    /// Indices of all prefixes that agree with prefix k off coordinate i,
    /// i.e. the admissible replacements at i (prefix k itself included).
    std::vector<std::size_t> replacements(std::size_t k, std::size_t i) const;

private:
    MultisliceSpec spec_;
    std::size_t n_;
    std::vector<Configuration> prefixes_;
    std::vector<std::uint8_t> levels_;
    std::vector<double> weights_;
};

}  // namespace mslice
