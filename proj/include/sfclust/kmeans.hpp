#ifndef SFCLUST_KMEANS_HPP
#define SFCLUST_KMEANS_HPP

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "sfclust/rng.hpp"
#include "sfclust/types.hpp"

/**
 * @file kmeans.hpp
 *
 * @brief Weighted Lloyd k-means and the alternating sparse clustering loops.
 *
 * Both the multivariate and the functional case reduce to Lloyd iterations
 * on a matrix whose columns carry nonnegative weights: the feature weights
 * w_j in the multivariate case and quad_g * w(x_g) for curves. Centroids are
 * plain means of the members; weights only enter the distances.
 */

namespace sfclust {

struct KMeansConfig {
    int k = 2;
    int max_iter_outer = 20;
    int max_iter_lloyd = 100;
    int n_init = 10;
    std::uint64_t seed = 1;
    /// Secondary outer stop: relative L2 change of the weights.
    double tol_weights = 1e-6;
};

/// Throws InvalidArgument on non-positive settings, KTooLarge if K > n.
void validate_config(const KMeansConfig& cfg, Eigen::Index n);

struct KMeansFit {
    Partition partition;
    Eigen::MatrixXd centroids;  // K x p, rows follow the canonical labels
    double wcss = 0.0;
    /// Weighted WCSS after each Lloyd step of the winning restart.
    std::vector<double> wcss_trace;
    int iterations = 0;
    /// Index of the winning start; 0 is the warm start when one is given.
    int restart = 0;
};

/**
 * Lloyd iterations under the column-weighted squared distance
 * sum_j col_weights_j (x_j - c_j)^2. Runs cfg.n_init k-means++ starts
 * (preceded by a start from the centroids of `warm`, if given) and keeps
 * the lowest weighted WCSS, ties going to the earlier start. A cluster that
 * empties is re-seeded at the observation farthest from its own centroid.
 */
KMeansFit weighted_lloyd(const Eigen::MatrixXd& x, const Eigen::VectorXd& col_weights,
                         const KMeansConfig& cfg, Rng& rng, const Partition* warm = nullptr);

/// Weighted k-means of a multivariate dataset under feature weights `w`.
KMeansFit weighted_kmeans(const Dataset& data, const Eigen::VectorXd& w, const KMeansConfig& cfg,
                          Rng& rng, const Partition* warm = nullptr);
KMeansFit weighted_kmeans(const Dataset& data, const WeightVector& w, const KMeansConfig& cfg);

/// Functional k-means under the weighted L2 distance d_w.
KMeansFit weighted_kmeans(const FunctionalDataset& data, const Eigen::VectorXd& w,
                          const KMeansConfig& cfg, Rng& rng, const Partition* warm = nullptr);
KMeansFit weighted_kmeans(const FunctionalDataset& data, const WeightFunction& w,
                          const KMeansConfig& cfg);

/// Unweighted k-means (uniform unit-norm weights).
KMeansFit plain_kmeans(const Dataset& data, const KMeansConfig& cfg);
KMeansFit plain_kmeans(const FunctionalDataset& data, const KMeansConfig& cfg);

using MvResult = SparseClusterResult<WeightVector>;
using FdResult = SparseClusterResult<WeightFunction>;
using SoftResult = SparseClusterResult<SoftWeights>;

/**
 * Multivariate sparse k-means with hard thresholding: start from plain
 * k-means, then alternate optimal weights for the current partition with
 * weighted k-means under those weights until the partition repeats.
 * The objective trace records sum_j w_j b_j after every weight step.
 */
MvResult sparse_kmeans_mv(const Dataset& data, int m, const KMeansConfig& cfg);

/// Same alternation with the lasso-constrained weights (budget s).
SoftResult sparse_kmeans_soft(const Dataset& data, double s, const KMeansConfig& cfg);

/// Functional sparse k-means; `m` is the measure of the zero set of w.
FdResult sparse_kmeans_fd(const FunctionalDataset& data, double m, const KMeansConfig& cfg);

}  // namespace sfclust

#endif
