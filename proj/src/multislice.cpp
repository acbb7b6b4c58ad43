#include "mslice/multislice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace mslice {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    const u128 p = static_cast<u128>(a) * b;
    if (p > std::numeric_limits<std::uint64_t>::max()) {
        throw EnumerationTooLarge("multinomial coefficient exceeds 64-bit range");
    }
    return static_cast<std::uint64_t>(p);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) {
            throw EnumerationTooLarge("multinomial coefficient exceeds 64-bit range");
        }
    }
    return static_cast<std::uint64_t>(r);
}

// Depth-first enumeration of level sequences of length n with per-level
// budget `remaining`, in lexicographic order.
void enumerate_levels(std::vector<std::size_t>& remaining, std::vector<std::uint8_t>& current,
                      std::size_t n, std::vector<std::uint8_t>& out) {
    if (current.size() == n) {
        out.insert(out.end(), current.begin(), current.end());
        return;
    }
    for (std::size_t l = 0; l < remaining.size(); ++l) {
        if (remaining[l] == 0) continue;
        --remaining[l];
        current.push_back(static_cast<std::uint8_t>(l));
        enumerate_levels(remaining, current, n, out);
        current.pop_back();
        ++remaining[l];
    }
}

std::optional<std::size_t> search_levels(const std::vector<std::uint8_t>& flat, std::size_t width,
                                         std::span<const std::uint8_t> key) {
    if (key.size() != width || width == 0) return std::nullopt;
    std::size_t lo = 0;
    std::size_t hi = flat.size() / width;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const auto* row = flat.data() + mid * width;
        const auto cmp = std::lexicographical_compare_three_way(row, row + width, key.begin(), key.end());
        if (cmp == 0) return mid;
        if (cmp < 0) lo = mid + 1; else hi = mid;
    }
    return std::nullopt;
}

std::vector<std::uint8_t> to_levels(const MultisliceSpec& spec, const Configuration& config) {
    std::vector<std::uint8_t> levels(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) {
        levels[i] = static_cast<std::uint8_t>(spec.level_of(config[i]));
    }
    return levels;
}

Configuration from_levels(const MultisliceSpec& spec, std::span<const std::uint8_t> levels) {
    std::vector<double> entries(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) entries[i] = spec.value(levels[i]);
    return Configuration(std::move(entries));
}

}  // namespace

MultisliceSpec::MultisliceSpec(std::vector<std::size_t> kappa, std::vector<double> values)
    : kappa_(std::move(kappa)), values_(std::move(values)) {
    if (kappa_.size() < 2) throw std::invalid_argument("multislice needs at least two levels");
    if (kappa_.size() != values_.size()) throw std::invalid_argument("kappa and values differ in length");
    if (kappa_.size() > std::numeric_limits<std::uint8_t>::max()) {
        throw std::invalid_argument("at most 255 levels are supported");
    }
    for (std::size_t l = 0; l < kappa_.size(); ++l) {
        if (kappa_[l] == 0) throw std::invalid_argument("every kappa entry must be positive");
        if (!std::isfinite(values_[l])) throw std::invalid_argument("values must be finite");
        if (l > 0 && !(values_[l - 1] < values_[l])) {
            throw std::invalid_argument("values must be strictly increasing");
        }
    }
    size_ = std::accumulate(kappa_.begin(), kappa_.end(), std::size_t{0});
}

MultisliceSpec MultisliceSpec::binary(std::size_t zeros, std::size_t ones) {
    return MultisliceSpec({zeros, ones}, {0.0, 1.0});
}

MultisliceSpec MultisliceSpec::permutations(std::size_t n) {
    std::vector<double> values(n);
    std::iota(values.begin(), values.end(), 1.0);
    return MultisliceSpec(std::vector<std::size_t>(n, 1), std::move(values));
}

std::size_t MultisliceSpec::kappa_min() const noexcept {
    return *std::min_element(kappa_.begin(), kappa_.end());
}

double MultisliceSpec::mean() const noexcept {
    double total = 0.0;
    for (std::size_t l = 0; l < kappa_.size(); ++l) total += static_cast<double>(kappa_[l]) * values_[l];
    return total / static_cast<double>(size_);
}

std::optional<std::size_t> MultisliceSpec::find_level(double x) const noexcept {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    if (it == values_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
}

std::size_t MultisliceSpec::level_of(double x) const {
    if (auto l = find_level(x)) return *l;
    std::ostringstream msg;
    msg << "value " << x << " is not in the multislice value set";
    throw std::invalid_argument(msg.str());
}

std::string MultisliceSpec::describe() const {
    std::ostringstream out;
    out << "kappa=(";
    for (std::size_t l = 0; l < kappa_.size(); ++l) out << (l ? "," : "") << kappa_[l];
    out << ") values=(";
    for (std::size_t l = 0; l < values_.size(); ++l) out << (l ? "," : "") << values_[l];
    out << ")";
    return out.str();
}

Configuration Configuration::prefix(std::size_t n) const {
    if (n > entries_.size()) throw IndexOutOfRange("prefix length exceeds configuration length");
    return Configuration(std::vector<double>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::uint64_t multinomial(std::span<const std::size_t> counts) {
    std::uint64_t result = 1;
    std::uint64_t total = 0;
    for (const std::size_t c : counts) {
        total += c;
        result = checked_mul(result, binomial(total, c));
    }
    return result;
}

std::uint64_t cardinality(const MultisliceSpec& spec) {
    return multinomial(spec.kappa());
}

std::vector<std::size_t> level_counts(const MultisliceSpec& spec, const Configuration& config) {
    std::vector<std::size_t> counts(spec.levels(), 0);
    for (const double x : config) ++counts[spec.level_of(x)];
    return counts;
}

bool is_prefix_member(const MultisliceSpec& spec, const Configuration& prefix) {
    if (prefix.size() > spec.size()) return false;
    std::vector<std::size_t> counts(spec.levels(), 0);
    for (const double x : prefix) {
        const auto l = spec.find_level(x);
        if (!l) return false;
        if (++counts[*l] > spec.kappa()[*l]) return false;
    }
    return true;
}

bool is_member(const MultisliceSpec& spec, const Configuration& config) {
    return config.size() == spec.size() && is_prefix_member(spec, config);
}

Configuration canonical_arrangement(const MultisliceSpec& spec) {
    std::vector<double> entries;
    entries.reserve(spec.size());
    for (std::size_t l = 0; l < spec.levels(); ++l) entries.insert(entries.end(), spec.kappa()[l], spec.value(l));
    return Configuration(std::move(entries));
}

std::vector<Configuration> enumerate(const MultisliceSpec& spec, std::uint64_t cap) {
    const std::uint64_t count = cardinality(spec);
    if (count > cap) {
        throw EnumerationTooLarge("multislice " + spec.describe() + " has " + std::to_string(count) +
                                  " states, above the cap of " + std::to_string(cap));
    }
    std::vector<std::size_t> remaining = spec.kappa();
    std::vector<std::uint8_t> current;
    std::vector<std::uint8_t> flat;
    flat.reserve(count * spec.size());
    enumerate_levels(remaining, current, spec.size(), flat);

    std::vector<Configuration> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(from_levels(spec, std::span(flat).subspan(k * spec.size(), spec.size())));
    }
    return out;
}

namespace {

// Forward Fisher-Yates restricted to the first `steps` positions.
Configuration partial_shuffle(const MultisliceSpec& spec, std::size_t steps, RandomStream& rng) {
    const Configuration base = canonical_arrangement(spec);
    std::vector<double> a(base.begin(), base.end());
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < steps && i + 1 < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(a[i], a[pick(rng)]);
    }
    a.resize(steps);
    return Configuration(std::move(a));
}

}  // namespace

Configuration sample_uniform(const MultisliceSpec& spec, RandomStream& rng) {
    return partial_shuffle(spec, spec.size(), rng);
}

Configuration sample_without_replacement(const MultisliceSpec& spec, std::size_t n, RandomStream& rng) {
    if (n < 1 || n > spec.size()) {
        throw std::invalid_argument("sample size must satisfy 1 <= n <= N");
    }
    return partial_shuffle(spec, n, rng);
}

Configuration switch_entries(const Configuration& config, std::size_t i, std::size_t j) {
    if (i >= config.size() || j >= config.size() || i == j) {
        throw IndexOutOfRange("switch needs two distinct indices below the configuration length");
    }
    Configuration out = config;
    std::swap(out[i], out[j]);
    return out;
}

std::vector<double> admissible_replacements(const Configuration& prefix, const MultisliceSpec& spec,
                                            std::size_t i) {
    if (i >= prefix.size()) throw IndexOutOfRange("replacement index beyond prefix length");
    if (!is_prefix_member(spec, prefix)) throw std::invalid_argument("not a valid prefix of the multislice");
    auto counts = level_counts(spec, prefix);
    --counts[spec.level_of(prefix[i])];
    std::vector<double> out;
    for (std::size_t l = 0; l < spec.levels(); ++l) {
        if (counts[l] + 1 <= spec.kappa()[l]) out.push_back(spec.value(l));
    }
    return out;
}

StateSpace::StateSpace(MultisliceSpec spec, std::uint64_t cap) : spec_(std::move(spec)) {
    const std::uint64_t count = cardinality(spec_);
    if (count > cap) {
        throw EnumerationTooLarge("multislice " + spec_.describe() + " has " + std::to_string(count) +
                                  " states, above the cap of " + std::to_string(cap));
    }
    const std::size_t n = spec_.size();
    std::vector<std::size_t> remaining = spec_.kappa();
    std::vector<std::uint8_t> current;
    levels_.reserve(count * n);
    enumerate_levels(remaining, current, n, levels_);
    states_.reserve(count);
    for (std::size_t k = 0; k < count; ++k) states_.push_back(from_levels(spec_, levels(k)));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
    }
    switch_.resize(states_.size() * pairs_.size());
    std::vector<std::uint8_t> scratch(n);
    for (std::size_t k = 0; k < states_.size(); ++k) {
        const auto lv = levels(k);
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [i, j] = pairs_[p];
            if (lv[i] == lv[j]) {
                switch_[k * pairs_.size() + p] = static_cast<std::uint32_t>(k);
                continue;
            }
            std::copy(lv.begin(), lv.end(), scratch.begin());
            std::swap(scratch[i], scratch[j]);
            switch_[k * pairs_.size() + p] = static_cast<std::uint32_t>(*find(scratch));
        }
    }
}

std::span<const std::uint8_t> StateSpace::levels(std::size_t k) const {
    return std::span(levels_).subspan(k * spec_.size(), spec_.size());
}

std::optional<std::size_t> StateSpace::find(std::span<const std::uint8_t> key) const {
    return search_levels(levels_, spec_.size(), key);
}

std::size_t StateSpace::index_of(const Configuration& config) const {
    if (!is_member(spec_, config)) throw std::invalid_argument("configuration is not in the multislice");
    return *find(to_levels(spec_, config));
}

PrefixSpace::PrefixSpace(MultisliceSpec spec, std::size_t n, std::uint64_t cap)
    : spec_(std::move(spec)), n_(n) {
    if (n_ < 1 || n_ > spec_.size()) throw std::invalid_argument("prefix length must satisfy 1 <= n <= N");
    const std::uint64_t total = cardinality(spec_);
    std::vector<std::size_t> remaining = spec_.kappa();
    std::vector<std::uint8_t> current;
    enumerate_levels(remaining, current, n_, levels_);
    const std::size_t count = levels_.size() / n_;
    if (count > cap) {
        throw EnumerationTooLarge("prefix space has " + std::to_string(count) + " elements, above the cap");
    }
    prefixes_.reserve(count);
    weights_.reserve(count);
    std::vector<std::size_t> rest(spec_.levels());
    for (std::size_t k = 0; k < count; ++k) {
        const auto lv = levels(k);
        prefixes_.push_back(from_levels(spec_, lv));
        rest = spec_.kappa();
        for (const auto l : lv) --rest[l];
        weights_.push_back(static_cast<double>(multinomial(rest)) / static_cast<double>(total));
    }
}

std::span<const std::uint8_t> PrefixSpace::levels(std::size_t k) const {
    return std::span(levels_).subspan(k * n_, n_);
}

std::optional<std::size_t> PrefixSpace::find(std::span<const std::uint8_t> key) const {
    return search_levels(levels_, n_, key);
}

std::size_t PrefixSpace::index_of(const Configuration& prefix) const {
    if (prefix.size() != n_ || !is_prefix_member(spec_, prefix)) {
        throw std::invalid_argument("configuration is not in the prefix space");
    }
    return *find(to_levels(spec_, prefix));
}

std::vector<std::size_t> PrefixSpace::replacements(std::size_t k, std::size_t i) const {
    if (i >= n_) throw IndexOutOfRange("replacement index beyond prefix length");
    std::vector<std::uint8_t> key(levels(k).begin(), levels(k).end());
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < spec_.levels(); ++l) {
        key[i] = static_cast<std::uint8_t>(l);
        if (auto idx = find(key)) out.push_back(*idx);
    }
    return out;
}

}  // namespace mslice
