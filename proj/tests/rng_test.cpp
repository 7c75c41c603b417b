#include "numlab/rng.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace numlab;

TEST(SplitMix64, ReferenceOutputs) {
    EXPECT_EQ(next_u64(RngState{0}).value, 0xE220A8397B1DCDAFULL);

    RngState s{1};
    const std::uint64_t expected[] = {0x910A2DEC89025CC1ULL, 0xBEEB8DA1658EEC67ULL, 0xF893A2EEFB32555EULL};
    for (std::uint64_t e : expected) {
        const auto d = next_u64(s);
        EXPECT_EQ(d.value, e);
        s = d.next;
    }
}

TEST(SplitMix64, StateIsAValue) {
    const RngState s{42};
    EXPECT_EQ(next_u64(s).value, next_u64(s).value);
    EXPECT_NE(next_u64(s).next, s);
}

TEST(NextReal, RangeAndMean) {
    RngState s{7};
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto d = next_real(s);
        ASSERT_GE(d.value, 0.0);
        ASSERT_LT(d.value, 1.0);
        sum += d.value;
        s = d.next;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(NextReal, TopBitsOnly) {
    const auto u = next_u64(RngState{0});
    EXPECT_EQ(next_real(RngState{0}).value, static_cast<double>(u.value >> 11) / 9007199254740992.0);
}

TEST(RandomMatrix, RowMajorDraws) {
    const auto m = random_matrix(3, RngState{5});
    RngState s{5};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const auto d = next_real(s);
            EXPECT_EQ(m.value(i, j), d.value);
            s = d.next;
        }
    EXPECT_EQ(m.next, s);
    EXPECT_EQ(random_matrix(3, RngState{5}).value, m.value);
}

TEST(SplitStream, DistinctAndReproducible) {
    std::set<std::uint64_t> seen;
    for (std::size_t k = 1; k <= 20; ++k) {
        const RngState a = split_stream(RngState{42}, k);
        EXPECT_EQ(a, split_stream(RngState{42}, k));
        seen.insert(a.state);
    }
    EXPECT_EQ(seen.size(), 20u);
    EXPECT_EQ(split_stream(RngState{42}, 1).state, next_u64(RngState{42}).value);
}
