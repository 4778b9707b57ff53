#include <doctest.h>

#include <numeric>
#include <set>

#include "pamlyap/types.hpp"

using namespace pam;

TEST_SUITE("types") {

TEST_CASE("model params validate p+q=2 and signs") {
    CHECK_NOTHROW(ModelParams(1.0, 1.0, 0.5));
    CHECK_NOTHROW(ModelParams(2.0, 0.0, 1.0));
    CHECK_THROWS_AS(ModelParams(1.5, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(-0.5, 2.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(1.0, 1.0, -0.1), std::invalid_argument);
    ModelParams p(0.7, 1.3, 2.0);
    CHECK(p.p() + p.q() == 2.0);
    CHECK(p.drift() == doctest::Approx(-0.6));
    CHECK(ModelParams(2.0, 0.0, 1.0).one_sided());
    CHECK_FALSE(p.one_sided());
}

TEST_CASE("ordered tuple is the weakly decreasing nonnegative cone") {
    CHECK_NOTHROW(OrderedTuple({3, 1, 0}));
    CHECK_NOTHROW(OrderedTuple({2, 2, 2}));
    CHECK_THROWS_AS(OrderedTuple({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(OrderedTuple({1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(OrderedPair(0, 1), std::invalid_argument);
    CHECK_NOTHROW(OrderedPair(2, -1));  // two-sided pairs allow negative entries
}

TEST_CASE("partition invariants") {
    Partition lam({3, 2, 2, 1});
    CHECK(lam.weight() == 8);
    CHECK(lam.length() == 4);
    auto m = lam.multiplicities();
    REQUIRE(m.size() == 3);
    CHECK(m[0] == 1);
    CHECK(m[1] == 2);
    CHECK(m[2] == 1);
    CHECK(lam.symmetry_factor() == doctest::Approx(0.5));
    CHECK(lam.to_string() == "(3,2,2,1)");
    CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({2, 0}), std::invalid_argument);
}

namespace {
// independent brute-force count: p(k) by restricted compositions
int count_partitions(int k, int max_part) {
    if (k == 0) return 1;
    int total = 0;
    for (int first = std::min(k, max_part); first >= 1; --first)
        total += count_partitions(k - first, first);
    return total;
}
}  // namespace

TEST_CASE("partition enumeration matches the brute-force oracle") {
    CHECK(enumerate_partitions(1).size() == 1);
    // k=3 exhaustive small case
    auto p3 = enumerate_partitions(3);
    REQUIRE(p3.size() == 3);
    CHECK(p3[0].parts() == std::vector<int>{3});
    CHECK(p3[1].parts() == std::vector<int>{2, 1});
    CHECK(p3[2].parts() == std::vector<int>{1, 1, 1});
    CHECK(enumerate_partitions(6).size() == 11);
    for (int k = 1; k <= 12; ++k) {
        auto parts = enumerate_partitions(k);
        CHECK(static_cast<int>(parts.size()) == count_partitions(k, k));
        std::set<std::vector<int>> seen;
        for (const auto& lam : parts) {
            CHECK(lam.weight() == k);
            // sum i * m_i == k
            int total = 0;
            auto mult = lam.multiplicities();
            for (std::size_t i = 0; i < mult.size(); ++i)
                total += static_cast<int>(i + 1) * mult[i];
            CHECK(total == k);
            seen.insert(lam.parts());
        }
        CHECK(seen.size() == parts.size());  // each exactly once
    }
    CHECK_THROWS_AS(enumerate_partitions(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_partitions(13), std::invalid_argument);
}

}  // TEST_SUITE
