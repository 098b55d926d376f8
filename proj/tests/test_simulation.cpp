#include <gtest/gtest.h>

#include <cmath>

#include "sfclust/simulation.hpp"

using namespace sfclust;

TEST(Summary, MeanAndSampleSd) {
    const MethodSummary s = summarize("x", {1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.sd, std::sqrt(5.0 / 3.0), 1e-15);
    EXPECT_EQ(s.runs, 4);
    EXPECT_EQ(summarize("y", {0.3}).sd, 0.0);
}

TEST(Spearman, RanksWithTies) {
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {1, 4, 9}), 1.0);
    EXPECT_NEAR(spearman({1, 2, 3, 4}, {1, 1, 2, 2}), 0.894427190999916, 1e-12);
    EXPECT_TRUE(std::isnan(spearman({1, 2}, {3, 3})));
    EXPECT_THROW(spearman({1}, {1, 2}), Error);
}

TEST(Grids, Defaults) {
    const auto m = default_m_grid(50, 25);
    EXPECT_EQ(m.front(), 0);
    EXPECT_EQ(m.back(), 49);
    EXPECT_EQ(m.size(), 25u);
    for (std::size_t i = 1; i < m.size(); ++i) EXPECT_GT(m[i], m[i - 1]);
    const auto s = default_s_grid(50, 6);
    EXPECT_DOUBLE_EQ(s.front(), 1.1);
    EXPECT_DOUBLE_EQ(s.back(), std::sqrt(50.0));
}

TEST(Seeds, RunsAreIndependentAndReproducible) {
    EXPECT_NE(run_data_seed(1, 0), run_cluster_seed(1, 0));
    EXPECT_NE(run_data_seed(1, 0), run_data_seed(1, 1));
    Table1Options o;
    o.m = 25;
    o.s = 3.0;
    const Table1Run a = run_table1_once(o, 3);
    const Table1Run b = run_table1_once(o, 3);
    EXPECT_EQ(a.cer_hard, b.cer_hard);
    EXPECT_EQ(a.w_soft, b.w_soft);
}

TEST(Table2, SingleRunFields) {
    Table2Options o;
    const Table2Run r = run_table2_once(o, 0);
    EXPECT_EQ(r.m, 0.5);
    EXPECT_EQ(r.grid.size(), 200);
    EXPECT_FALSE(r.support.empty());
    EXPECT_LE(r.iterations, o.cfg.max_iter_outer);
    EXPECT_LT(r.cer_sparse, r.cer_std);
}
