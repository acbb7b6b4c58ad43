#include "catch_amalgamated.hpp"

#include <map>
#include <set>

#include "mslice/functional.hpp"
#include "mslice/multislice.hpp"
#include "mslice/random.hpp"
#include "oracles.hpp"

using namespace mslice;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> as_vector(const Configuration& c) { return {c.begin(), c.end()}; }

// Three binomial standard errors around p.
void require_frequency(std::uint64_t hits, std::uint64_t draws, double p) {
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    REQUIRE_THAT(static_cast<double>(hits) / static_cast<double>(draws), WithinAbs(p, 3.0 * se));
}

}  // namespace

TEST_CASE("cardinality") {
    CHECK(cardinality(MultisliceSpec({1, 1}, {0, 1})) == 2);
    CHECK(cardinality(MultisliceSpec({2, 2}, {0, 1})) == 6);
    CHECK(cardinality(MultisliceSpec({2, 1, 1}, {0, 1, 2})) == 12);
    CHECK(cardinality(MultisliceSpec::permutations(6)) == 720);
    CHECK_THROWS_AS(cardinality(MultisliceSpec({40, 40, 40}, {0, 1, 2})), EnumerationTooLarge);
}

TEST_CASE("cardinality matches the arrangement count") {
    for (const auto& spec : default_suite_specs()) {
        const auto expected = oracle::arrangements(spec.kappa(), spec.values()).size();
        CHECK(cardinality(spec) == expected);
    }
}

TEST_CASE("enumerate lists states in lexicographic order") {
    const auto two = enumerate(MultisliceSpec({1, 1}, {0, 1}));
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Configuration{0, 1});
    CHECK(two[1] == Configuration{1, 0});

    const auto three = enumerate(MultisliceSpec({2, 1}, {0, 1}));
    REQUIRE(three.size() == 3);
    CHECK(three[0] == Configuration{0, 0, 1});
    CHECK(three[1] == Configuration{0, 1, 0});
    CHECK(three[2] == Configuration{1, 0, 0});

    const auto perms = enumerate(MultisliceSpec({1, 1, 1}, {1, 2, 3}));
    CHECK(perms.size() == 6);
    CHECK(std::set<Configuration>(perms.begin(), perms.end()).size() == 6);

    for (const auto& spec : default_suite_specs()) {
        const auto got = enumerate(spec);
        const auto want = oracle::arrangements(spec.kappa(), spec.values());
        REQUIRE(got.size() == want.size());
        for (std::size_t k = 0; k < got.size(); ++k) CHECK(as_vector(got[k]) == want[k]);
    }
}

TEST_CASE("enumerate respects the cap") {
    CHECK_THROWS_AS(enumerate(MultisliceSpec::permutations(6), 719), EnumerationTooLarge);
    CHECK(enumerate(MultisliceSpec::permutations(6), 720).size() == 720);
}

TEST_CASE("sampled configurations keep the level counts") {
    const MultisliceSpec spec({3, 2, 4}, {-1, 0.5, 2});
    for (std::uint64_t s = 0; s < 200; ++s) {
        RandomStream rng(11, s);
        const auto w = sample_uniform(spec, rng);
        CHECK(level_counts(spec, w) == spec.kappa());
        CHECK(is_member(spec, w));
    }
}

TEST_CASE("sample_uniform frequencies") {
    SECTION("kappa=(1,1)") {
        const MultisliceSpec spec({1, 1}, {0, 1});
        std::uint64_t hits = 0;
        const std::uint64_t draws = 100000;
        for (std::uint64_t s = 0; s < draws; ++s) {
            RandomStream rng(3, s);
            if (sample_uniform(spec, rng) == Configuration{0, 1}) ++hits;
        }
        require_frequency(hits, draws, 0.5);
    }
    SECTION("each configuration of (2,1) has probability 1/3") {
        const MultisliceSpec spec({2, 1}, {0, 1});
        const StateSpace space(spec);
        std::vector<std::uint64_t> counts(space.size(), 0);
        for (std::uint64_t s = 0; s < 30000; ++s) {
            RandomStream rng(4, s);
            ++counts[space.index_of(sample_uniform(spec, rng))];
        }
        for (const auto c : counts) require_frequency(c, 30000, 1.0 / 3.0);
    }
}

TEST_CASE("chi-square uniformity on every small spec", "[slow]") {
    for (const auto& spec : default_suite_specs()) {
        const StateSpace space(spec);
        std::vector<std::uint64_t> counts(space.size(), 0);
        for (std::uint64_t s = 0; s < 1'000'000; ++s) {
            RandomStream rng(2024, s);
            ++counts[space.index_of(sample_uniform(spec, rng))];
        }
        INFO(spec.describe());
        CHECK(oracle::chi_square_uniform_pvalue(counts) > 1e-3);
    }
}

TEST_CASE("prefix law") {
    SECTION("n = N is the full configuration") {
        const MultisliceSpec spec({2, 3}, {0, 1});
        RandomStream a(5, 9);
        RandomStream b(5, 9);
        CHECK(sample_without_replacement(spec, spec.size(), a) == sample_uniform(spec, b));
    }
    SECTION("kappa=(3,1), n=1: P(w_1 = 1) = 1/4") {
        const MultisliceSpec spec({3, 1}, {0, 1});
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < 100000; ++s) {
            RandomStream rng(6, s);
            if (sample_without_replacement(spec, 1, rng)[0] == 1.0) ++hits;
        }
        require_frequency(hits, 100000, 0.25);
    }
    SECTION("kappa=(2,2), n=2: P((1,1)) = 1/6") {
        const MultisliceSpec spec({2, 2}, {0, 1});
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < 100000; ++s) {
            RandomStream rng(7, s);
            if (sample_without_replacement(spec, 2, rng) == Configuration{1, 1}) ++hits;
        }
        require_frequency(hits, 100000, 1.0 / 6.0);
    }
    SECTION("out of range n") {
        const MultisliceSpec spec({2, 2}, {0, 1});
        RandomStream rng(1);
        CHECK_THROWS_AS(sample_without_replacement(spec, 0, rng), std::invalid_argument);
        CHECK_THROWS_AS(sample_without_replacement(spec, 5, rng), std::invalid_argument);
    }
}

TEST_CASE("prefix pairs are exchangeable") {
    for (const auto& spec : default_suite_specs()) {
        std::map<std::pair<double, double>, std::uint64_t> counts;
        const std::uint64_t draws = 60000;
        for (std::uint64_t s = 0; s < draws; ++s) {
            RandomStream rng(8, s);
            const auto w = sample_without_replacement(spec, 2, rng);
            ++counts[{w[0], w[1]}];
        }
        for (const auto& [xy, c] : counts) {
            if (xy.first >= xy.second) continue;
            const auto it = counts.find({xy.second, xy.first});
            const double other = it == counts.end() ? 0.0 : static_cast<double>(it->second);
            // difference of two multinomial cells
            const double var = static_cast<double>(c) + other;
            INFO(spec.describe());
            CHECK(std::abs(static_cast<double>(c) - other) <= 4.0 * std::sqrt(var));
        }
    }
}

TEST_CASE("prefix-space weights match hypergeometric counting") {
    const MultisliceSpec spec({2, 2}, {0, 1});
    const PrefixSpace space(spec, 2);
    REQUIRE(space.size() == 4);
    CHECK_THAT(space.weight(space.index_of(Configuration{1, 1})), WithinAbs(1.0 / 6.0, 1e-15));
    CHECK_THAT(space.weight(space.index_of(Configuration{0, 1})), WithinAbs(1.0 / 3.0, 1e-15));

    const MultisliceSpec bigger({3, 2, 1}, {-1, 0.5, 2});
    const PrefixSpace p3(bigger, 3);
    double total = 0.0;
    for (const double w : p3.weights()) total += w;
    CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    // P(prefix) = number of full arrangements extending it / |Omega|
    const auto full = oracle::arrangements(bigger.kappa(), bigger.values());
    for (std::size_t k = 0; k < p3.size(); ++k) {
        std::size_t ext = 0;
        for (const auto& w : full) {
            if (std::equal(p3.prefix(k).begin(), p3.prefix(k).end(), w.begin())) ++ext;
        }
        CHECK_THAT(p3.weight(k), WithinAbs(static_cast<double>(ext) / static_cast<double>(full.size()), 1e-15));
    }
}

TEST_CASE("switch_entries") {
    CHECK(switch_entries(Configuration{0, 1, 0}, 0, 1) == Configuration{1, 0, 0});
    const Configuration w{2, 1, 2, 3};
    CHECK(switch_entries(w, 0, 2) == w);
    CHECK(switch_entries(switch_entries(w, 1, 3), 1, 3) == w);
    CHECK_THROWS_AS(switch_entries(w, 1, 1), IndexOutOfRange);
    CHECK_THROWS_AS(switch_entries(w, 0, 4), IndexOutOfRange);
}

TEST_CASE("switch is an involutive bijection of every small space") {
    for (const auto& spec : default_suite_specs()) {
        const StateSpace space(spec);
        for (std::size_t p = 0; p < space.pair_count(); ++p) {
            std::vector<bool> hit(space.size(), false);
            for (std::size_t k = 0; k < space.size(); ++k) {
                const auto m = space.switched(k, p);
                CHECK(space.switched(m, p) == k);
                const auto [i, j] = space.pair(p);
                CHECK(space.state(m) == switch_entries(space.state(k), i, j));
                hit[m] = true;
            }
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        }
    }
}

TEST_CASE("admissible_replacements") {
    const MultisliceSpec spec({2, 2}, {0, 1});
    CHECK(admissible_replacements(Configuration{0, 1, 1, 0}, spec, 2) == std::vector<double>{1});
    CHECK(admissible_replacements(Configuration{0}, spec, 0) == std::vector<double>{0, 1});
    CHECK(admissible_replacements(Configuration{0, 0}, spec, 0) == std::vector<double>{0, 1});
    CHECK(admissible_replacements(Configuration{1, 1}, spec, 1) == std::vector<double>{0, 1});

    const MultisliceSpec tight({1, 3}, {0, 1});
    CHECK(admissible_replacements(Configuration{0, 1}, tight, 1) == std::vector<double>{1});
    CHECK(admissible_replacements(Configuration{0, 1}, tight, 0) == std::vector<double>{0, 1});
    CHECK(admissible_replacements(Configuration{1, 0}, tight, 0) == std::vector<double>{1});
    CHECK_THROWS_AS(admissible_replacements(Configuration{0, 0}, tight, 0), std::invalid_argument);
}

TEST_CASE("prefix-space replacements agree with admissible_replacements") {
    const MultisliceSpec spec({2, 1, 2}, {0, 1, 2});
    const PrefixSpace space(spec, 3);
    for (std::size_t k = 0; k < space.size(); ++k) {
        for (std::size_t i = 0; i < 3; ++i) {
            std::vector<double> got;
            for (const auto m : space.replacements(k, i)) got.push_back(space.prefix(m)[i]);
            std::sort(got.begin(), got.end());
            CHECK(got == admissible_replacements(space.prefix(k), spec, i));
        }
    }
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(MultisliceSpec({1}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(MultisliceSpec({1, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MultisliceSpec({1, 1}, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(MultisliceSpec({1, 1}, {0}), std::invalid_argument);
}

TEST_CASE("streams are keyed by seed and index") {
    RandomStream a(1, 2);
    RandomStream b(1, 2);
    RandomStream c(1, 3);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    for (int k = 0; k < 1000; ++k) {
        const double u = a.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
