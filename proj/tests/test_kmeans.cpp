#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sfclust/dispersion.hpp"
#include "sfclust/kmeans.hpp"
#include "sfclust/metrics.hpp"
#include "sfclust/simgen.hpp"

using namespace sfclust;

namespace {

// Two clouds far apart along the first feature only.
Dataset two_clouds(Rng& rng, int per, int p, double sep) {
    Eigen::MatrixXd x = 0.1 * oracle::random_matrix(rng, 2 * per, p);
    for (int i = per; i < 2 * per; ++i) x(i, 0) += sep;
    return Dataset(x);
}

Partition halves(int per) {
    std::vector<int> l(static_cast<std::size_t>(2 * per), 0);
    for (int i = per; i < 2 * per; ++i) l[static_cast<std::size_t>(i)] = 1;
    return Partition(l, 2);
}

void expect_nondecreasing(const std::vector<double>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        EXPECT_GE(trace[i], trace[i - 1] - objective_tolerance(trace[i - 1])) << "step " << i;
    }
}

}  // namespace

TEST(Config, Validation) {
    KMeansConfig cfg;
    cfg.k = 5;
    EXPECT_THROW(validate_config(cfg, 4), Error);
    try {
        validate_config(cfg, 4);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::KTooLarge);
    }
    cfg.k = 1;
    EXPECT_THROW(validate_config(cfg, 4), Error);
    cfg.k = 2;
    cfg.n_init = 0;
    EXPECT_THROW(validate_config(cfg, 4), Error);
}

TEST(Lloyd, SeparatedCloudsRecovered) {
    Rng rng(1);
    const Dataset d = two_clouds(rng, 25, 3, 10.0);
    KMeansConfig cfg;
    const KMeansFit fit = plain_kmeans(d, cfg);
    EXPECT_TRUE(fit.partition.same_grouping(halves(25)));
    EXPECT_EQ(fit.partition, fit.partition.canonical());
    EXPECT_EQ(fit.centroids.rows(), 2);
}

TEST(Lloyd, WcssNonIncreasingEveryStep) {
    Rng rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::MatrixXd x = oracle::random_matrix(rng, 40, 5);
        Eigen::VectorXd w(5);
        for (int j = 0; j < 5; ++j) w(j) = rng.uniform();
        KMeansConfig cfg;
        cfg.k = 2 + static_cast<int>(rng.index(4));
        cfg.seed = rng.next();
        Rng run(cfg.seed);
        const KMeansFit fit = weighted_lloyd(x, w, cfg, run);
        ASSERT_FALSE(fit.wcss_trace.empty());
        for (std::size_t i = 1; i < fit.wcss_trace.size(); ++i) {
            EXPECT_LE(fit.wcss_trace[i], fit.wcss_trace[i - 1] * (1.0 + 1e-12));
        }
        EXPECT_NEAR(fit.wcss, fit.wcss_trace.back(), 1e-12 * (1.0 + fit.wcss));
        EXPECT_LE(fit.iterations, cfg.max_iter_lloyd);
    }
}

TEST(Lloyd, MaskedInformativeFeatureStillMonotone) {
    Rng rng(3);
    const Dataset d = two_clouds(rng, 20, 3, 10.0);
    Eigen::VectorXd w(3);
    w << 0.0, 1.0, 1.0;
    KMeansConfig cfg;
    Rng run(4);
    const KMeansFit fit = weighted_kmeans(d, w, cfg, run);
    for (std::size_t i = 1; i < fit.wcss_trace.size(); ++i) {
        EXPECT_LE(fit.wcss_trace[i], fit.wcss_trace[i - 1] * (1.0 + 1e-12));
    }
}

TEST(Lloyd, DuplicatePointsKeepClustersNonEmpty) {
    Eigen::MatrixXd x(8, 1);
    x << 0, 0, 0, 0, 1, 1, 1, 1;
    KMeansConfig cfg;
    cfg.k = 3;
    const KMeansFit fit = plain_kmeans(Dataset(x), cfg);
    for (int s : fit.partition.cluster_sizes()) EXPECT_GT(s, 0);
}

TEST(Lloyd, WarmStartNeverWorse) {
    Rng rng(5);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 30, 4);
    const Eigen::VectorXd w = Eigen::VectorXd::Ones(4);
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.n_init = 1;
    Rng r1(6);
    const KMeansFit base = weighted_lloyd(x, w, cfg, r1);
    Rng r2(99);
    const KMeansFit warm = weighted_lloyd(x, w, cfg, r2, &base.partition);
    EXPECT_LE(warm.wcss, base.wcss * (1.0 + 1e-12));
}

TEST(Lloyd, Errors) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(5, 2);
    KMeansConfig cfg;
    Rng rng(1);
    EXPECT_THROW(weighted_lloyd(x, Eigen::VectorXd::Ones(3), cfg, rng), Error);
    EXPECT_THROW(weighted_lloyd(x, Eigen::VectorXd::Zero(2), cfg, rng), Error);
    cfg.k = 6;
    EXPECT_THROW(weighted_lloyd(x, Eigen::VectorXd::Ones(2), cfg, rng), Error);
}

TEST(SparseMv, OneInformativeFeature) {
    Rng rng(7);
    const Dataset d = two_clouds(rng, 15, 3, 5.0);
    KMeansConfig cfg;
    const MvResult res = sparse_kmeans_mv(d, 2, cfg);
    EXPECT_EQ(res.weights.w(0), 1.0);
    EXPECT_EQ(res.weights.w(1), 0.0);
    EXPECT_EQ(res.weights.w(2), 0.0);
    EXPECT_EQ(cer(res.partition, halves(15)), 0.0);
    EXPECT_TRUE(res.converged);
}

TEST(SparseMv, NoSparsityIsAWeightedFixedPoint) {
    Rng rng(8);
    MvScenario s;
    s.seed = 8;
    const MvSample sample = gen_mv(s);
    KMeansConfig cfg;
    cfg.k = 3;
    const MvResult res = sparse_kmeans_mv(sample.data, 0, cfg);
    ASSERT_TRUE(res.converged);
    EXPECT_EQ(res.weights.zero_count(), 0);
    // one more weighted k-means step from the final partition changes nothing
    Rng run(1);
    const KMeansFit again = weighted_kmeans(sample.data, res.weights.w, cfg, run, &res.partition);
    EXPECT_TRUE(again.partition.same_grouping(res.partition));
}

TEST(SparseMv, ObjectiveTraceMonotoneAndBounded) {
    Rng rng(9);
    for (int trial = 0; trial < 25; ++trial) {
        const int p = 3 + static_cast<int>(rng.index(20));
        const Eigen::MatrixXd x = oracle::random_matrix(rng, 30, p);
        KMeansConfig cfg;
        cfg.k = 2 + static_cast<int>(rng.index(3));
        cfg.seed = rng.next();
        cfg.n_init = 3;
        const int m = static_cast<int>(rng.index(static_cast<std::size_t>(p)));
        const MvResult res = sparse_kmeans_mv(Dataset(x), m, cfg);
        expect_nondecreasing(res.objective_trace);
        EXPECT_LE(res.iterations, cfg.max_iter_outer);
        EXPECT_EQ(res.weights.zero_count(), m);
        EXPECT_NEAR(res.weights.w.norm(), 1.0, kNormTolerance);
    }
}

TEST(SparseMv, DeterministicUnderFixedSeed) {
    MvScenario s;
    s.seed = 12;
    const MvSample sample = gen_mv(s);
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.seed = 77;
    const MvResult a = sparse_kmeans_mv(sample.data, 20, cfg);
    const MvResult b = sparse_kmeans_mv(sample.data, 20, cfg);
    EXPECT_EQ(a.partition, b.partition);
    EXPECT_EQ(a.weights.w, b.weights.w);
    EXPECT_EQ(a.objective_trace, b.objective_trace);
}

TEST(SparseMv, RelabelingLeavesWeightsUnchanged) {
    MvScenario s;
    s.seed = 13;
    const MvSample sample = gen_mv(s);
    std::vector<int> rl = sample.truth.labels();
    for (int& l : rl) l = (l + 2) % 3;
    const Eigen::VectorXd b1 = bcss_per_feature(sample.data, sample.truth);
    const Eigen::VectorXd b2 = bcss_per_feature(sample.data, Partition(rl, 3));
    const WeightVector w1 = hard_threshold_weights(b1, 25);
    const WeightVector w2 = hard_threshold_weights(b2, 25);
    EXPECT_EQ(w1.support(), w2.support());
    EXPECT_LE((w1.w - w2.w).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(w1.w.dot(b1), w2.w.dot(b2), 1e-12 * w1.w.dot(b1));
}

TEST(SparseSoft, ConstraintsHoldAtConvergence) {
    MvScenario s;
    s.seed = 14;
    const MvSample sample = gen_mv(s);
    KMeansConfig cfg;
    cfg.k = 3;
    const SoftResult res = sparse_kmeans_soft(sample.data, 3.0, cfg);
    expect_nondecreasing(res.objective_trace);
    EXPECT_LE(res.weights.w.lpNorm<1>(), 3.0 + 1e-8);
    EXPECT_NEAR(res.weights.w.norm(), 1.0, 1e-9);
    EXPECT_LT(cer(res.partition, sample.truth), 0.2);
}

TEST(SparseFd, LeftQuarterSignal) {
    // classes differ only on [0, 1/4]; [1/4, 1/2] carries shared noise and
    // (1/2, 1] is the same for every curve
    Rng rng(15);
    const Eigen::VectorXd g = unit_grid(101);
    Eigen::MatrixXd v(40, 101);
    std::vector<int> labels(40);
    for (int i = 0; i < 40; ++i) {
        labels[static_cast<std::size_t>(i)] = i / 20;
        const double amp = rng.normal(1.0, 0.3);
        for (int t = 0; t < 101; ++t) {
            v(i, t) = std::sin(6.0 * g(t));
            if (g(t) <= 0.5) v(i, t) += amp * std::cos(9.0 * g(t));
            if (i >= 20 && g(t) <= 0.25) v(i, t) += 2.0;
        }
    }
    KMeansConfig cfg;
    const FdResult res = sparse_kmeans_fd(FunctionalDataset(g, v), 0.5, cfg);
    EXPECT_EQ(cer(res.partition, Partition(labels, 2)), 0.0);
    const auto support = support_intervals(res.weights, g);
    ASSERT_FALSE(support.empty());
    EXPECT_EQ(support.front().lo, 0.0);
    EXPECT_LE(support.back().hi, 0.5);
    expect_nondecreasing(res.objective_trace);
}

TEST(SparseFd, ObjectiveTraceMonotone) {
    Rng rng(16);
    for (int trial = 0; trial < 10; ++trial) {
        FdScenario s;
        s.per_class = 20;
        s.grid_size = 50;
        s.seed = rng.next();
        const FdSample sample = gen_fd(s);
        KMeansConfig cfg;
        cfg.seed = rng.next();
        cfg.n_init = 3;
        const FdResult res = sparse_kmeans_fd(sample.data, 0.1 + 0.8 * rng.uniform(), cfg);
        expect_nondecreasing(res.objective_trace);
        EXPECT_NEAR(res.weights.l2_norm(sample.data.quad_weights()), 1.0, kNormTolerance);
        EXPECT_GE(res.weights.zero_measure(sample.data.quad_weights()), res.weights.m - 1e-12);
    }
}

TEST(SparseFd, ReproducesFunctionalScenarioOnOneRun) {
    FdScenario s;
    s.seed = 3;
    const FdSample sample = gen_fd(s);
    KMeansConfig cfg;
    const double plain = cer(plain_kmeans(sample.data, cfg).partition, sample.truth);
    const FdResult res = sparse_kmeans_fd(sample.data, 0.5, cfg);
    EXPECT_LT(cer(res.partition, sample.truth), plain);
    EXPECT_GT(support_intervals(res.weights, sample.data.grid()).back().hi, 0.9);
}
