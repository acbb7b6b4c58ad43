#include "catch_amalgamated.hpp"

#include <random>

#include "mslice/tensor.hpp"
#include "mslice/tensor_norms.hpp"
#include "oracles.hpp"

using namespace mslice;
using Catch::Matchers::WithinAbs;

namespace {

DenseTensor random_tensor(std::mt19937_64& gen, std::vector<std::size_t> shape) {
    std::normal_distribution<double> z;
    DenseTensor t(std::move(shape));
    for (auto& v : t.data()) v = z(gen);
    return t;
}

Eigen::MatrixXd as_matrix(const DenseTensor& t) {
    Eigen::MatrixXd m(t.shape()[0], t.shape()[1]);
    for (std::size_t i = 0; i < t.shape()[0]; ++i) {
        for (std::size_t j = 0; j < t.shape()[1]; ++j) m(i, j) = t.at({i, j});
    }
    return m;
}

}  // namespace

TEST_CASE("partition enumeration") {
    const std::size_t bell[] = {1, 2, 5, 15, 52, 203};
    for (std::size_t d = 1; d <= 6; ++d) {
        const auto parts = enumerate_partitions(d);
        CHECK(parts.size() == bell[d - 1]);
        for (std::size_t a = 0; a < parts.size(); ++a) {
            for (std::size_t b = a + 1; b < parts.size(); ++b) CHECK_FALSE(parts[a] == parts[b]);
        }
    }
    CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_partitions(7), std::invalid_argument);
    CHECK(Partition::finest(3).to_string() == "{{1},{2},{3}}");
    CHECK(Partition::coarsest(3).to_string() == "{{1,2,3}}");
    CHECK(Partition({{2, 0}, {1}}).to_string() == "{{1,3},{2}}");
    CHECK(Partition::finest(3).refines(Partition({{0, 2}, {1}})));
    CHECK_FALSE(Partition({{0, 2}, {1}}).refines(Partition({{0, 1}, {2}})));
    CHECK_THROWS_AS(Partition({{0, 1}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({{0, 2}}), std::invalid_argument);
}

TEST_CASE("special cases") {
    SECTION("single block is the Hilbert-Schmidt norm") {
        std::mt19937_64 gen(1);
        const auto a = random_tensor(gen, {3, 4, 2});
        double ss = 0.0;
        for (const double v : a.data()) ss += v * v;
        CHECK_THAT(partition_norm(a, Partition::coarsest(3)).value, WithinAbs(std::sqrt(ss), 1e-12));
        CHECK_THAT(hs_norm(a), WithinAbs(std::sqrt(ss), 1e-12));
    }
    SECTION("identity matrix") {
        auto eye = DenseTensor::cube(2, 3);
        for (std::size_t i = 0; i < 3; ++i) eye.at({i, i}) = 1.0;
        CHECK_THAT(operator_norm(eye).value, WithinAbs(1.0, 1e-10));
    }
    SECTION("rank one") {
        const std::vector<std::vector<double>> f{{1, 2, -1}, {0.5, 3}, {2, 2, 1, -4}};
        const auto a = DenseTensor::outer(f);
        double want = 1.0;
        for (const auto& v : f) {
            double s = 0.0;
            for (const double x : v) s += x * x;
            want *= std::sqrt(s);
        }
        CHECK_THAT(operator_norm(a).value, WithinAbs(want, 1e-9));
    }
    SECTION("zero tensor") {
        const auto z = DenseTensor::cube(3, 3);
        for (const auto& p : enumerate_partitions(3)) CHECK(partition_norm(z, p).value == 0.0);
    }
    SECTION("all ones 2x2x2") {
        auto ones = DenseTensor::cube(3, 2);
        for (auto& v : ones.data()) v = 1.0;
        CHECK_THAT(hs_norm(ones), WithinAbs(std::sqrt(8.0), 1e-12));
    }
}

TEST_CASE("d=2 operator norm matches the spectral oracle") {
    std::mt19937_64 gen(2);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_tensor(gen, {dim(gen), dim(gen)});
        const double want = oracle::spectral_norm(as_matrix(a));
        REQUIRE_THAT(operator_norm(a).value, WithinAbs(want, 1e-8));
    }
}

TEST_CASE("monotonicity, sandwich and homogeneity on random tensors") {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<std::size_t> order(1, 3);
    std::uniform_int_distribution<std::size_t> side(1, 5);
    const double tol = 1e-8;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = order(gen);
        std::vector<std::size_t> shape(d);
        for (auto& s : shape) s = side(gen);
        const auto a = random_tensor(gen, shape);
        const auto norms = all_partition_norms(a);
        const double hs = hs_norm(a);
        double op = 0.0;
        for (const auto& pn : norms) {
            if (pn.partition == Partition::finest(d)) op = pn.result.value;
        }
        for (const auto& x : norms) {
            CHECK(x.result.value <= hs + tol);
            CHECK(op <= x.result.value + tol);
            for (const auto& y : norms) {
                if (x.partition.refines(y.partition)) CHECK(x.result.value <= y.result.value + tol);
            }
        }
        if (trial % 10 == 0) {
            const double c = -2.5;
            const auto scaled = a.scaled(c);
            for (const auto& p : enumerate_partitions(d)) {
                const double base = partition_norm(a, p).value;
                CHECK_THAT(partition_norm(scaled, p).value, WithinAbs(std::abs(c) * base, 1e-10 * std::abs(c) * base));
            }
        }
    }
}

TEST_CASE("restarts are reproducible") {
    std::mt19937_64 gen(4);
    const auto a = random_tensor(gen, {3, 3, 3});
    NormOptions opt;
    opt.seed = 99;
    const auto r1 = operator_norm(a, opt);
    const auto r2 = operator_norm(a, opt);
    CHECK(r1.value == r2.value);
    CHECK(r1.restarts == opt.restarts);
    CHECK(r1.gap_estimate >= 0.0);
    CHECK(r1.vectors.size() == 3);
}

TEST_CASE("shape mismatch") {
    const auto a = DenseTensor::cube(2, 3);
    CHECK_THROWS_AS(partition_norm(a, Partition::finest(3)), std::invalid_argument);
    CHECK_THROWS_AS(DenseTensor({2, 2}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(a.at({3, 0}), std::out_of_range);
}
