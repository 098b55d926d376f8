#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sfclust/metrics.hpp"
#include "sfclust/rng.hpp"

using namespace sfclust;

TEST(Cer, WorkedExamples) {
    const Partition a({0, 0, 1, 1}, 2);
    const Partition b({0, 1, 0, 1}, 2);
    EXPECT_NEAR(cer(a, b), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(cer(a, a), 0.0);
    EXPECT_EQ(cer(a, Partition({1, 1, 0, 0}, 2)), 0.0);
    EXPECT_EQ(cer(a, b), cer(b, a));
}

TEST(Cer, AllTogetherVersusAllApart) {
    const Partition one(std::vector<int>(5, 0), 1);
    const Partition apart({0, 1, 2, 3, 4}, 5);
    EXPECT_EQ(cer(one, apart), 1.0);
}

TEST(Cer, LengthMismatch) {
    try {
        cer(Partition({0, 1}, 2), Partition({0, 1, 1}, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
}

TEST(Cer, MatchesPairLoop) {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.index(80));
        const int ka = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(n, 6))));
        const int kb = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(n, 6))));
        const auto la = oracle::random_labels(rng, n, ka);
        const auto lb = oracle::random_labels(rng, n, kb);
        const Partition a(la, ka), b(lb, kb);
        ASSERT_EQ(disagreeing_pairs(a, b), oracle::disagreeing_pairs(la, lb));
        ASSERT_EQ(cer(a, b), oracle::cer(la, lb));
    }
}

TEST(Confusion, CountsAndMatching) {
    const Partition truth({0, 0, 0, 1, 1, 1}, 2);
    const Partition est({1, 1, 0, 0, 0, 0}, 2);
    const ConfusionMatrix raw = confusion(truth, est);
    EXPECT_EQ(raw.counts, (std::vector<std::vector<long long>>{{1, 2}, {3, 0}}));
    EXPECT_EQ(raw.total(), 6);
    const ConfusionMatrix m = matched_confusion(truth, est);
    EXPECT_EQ(m.counts, (std::vector<std::vector<long long>>{{2, 1}, {0, 3}}));
    EXPECT_EQ(m.col_labels, (std::vector<int>{1, 0}));
    EXPECT_EQ(m.off_diagonal(), 1);
}

TEST(Confusion, MatchingIsLabelInvariant) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto lt = oracle::random_labels(rng, 40, 3);
        auto le = oracle::random_labels(rng, 40, 3);
        const long long off = matched_confusion(Partition(lt, 3), Partition(le, 3)).off_diagonal();
        for (int& l : le) l = (l + 1) % 3;
        EXPECT_EQ(off, matched_confusion(Partition(lt, 3), Partition(le, 3)).off_diagonal());
    }
}
