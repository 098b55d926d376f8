#ifndef SFCLUST_TYPES_HPP
#define SFCLUST_TYPES_HPP

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

#include "sfclust/errors.hpp"

/**
 * @file types.hpp
 *
 * @brief Validated data containers shared by the clustering routines.
 *
 * All types check their invariants on construction and are immutable
 * afterwards, so they can be shared freely between threads.
 */

namespace sfclust {

/// Relative slack on analytically exact norm identities.
inline constexpr double kNormTolerance = 1e-9;

/// Slack used when checking that an objective trace is non-decreasing.
inline double objective_tolerance(double objective) {
    return 1e-12 * (1.0 + std::abs(objective));
}

/**
 * N observations by p features. Requires N >= 2, p >= 1 and finite entries.
 */
class Dataset {
public:
    explicit Dataset(Eigen::MatrixXd values, std::vector<std::string> feature_names = {});

    const Eigen::MatrixXd& values() const { return values_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }
    Eigen::Index n_obs() const { return values_.rows(); }
    Eigen::Index n_features() const { return values_.cols(); }

private:
    Eigen::MatrixXd values_;
    std::vector<std::string> feature_names_;
};

/// Trapezoidal quadrature weights for a strictly increasing grid.
Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& grid);

/**
 * N curves sampled on a shared strictly increasing grid, together with the
 * trapezoidal quadrature weights of that grid. The weights sum to the
 * length of the domain.
 */
class FunctionalDataset {
public:
    FunctionalDataset(Eigen::VectorXd grid, Eigen::MatrixXd values);

    const Eigen::VectorXd& grid() const { return grid_; }
    const Eigen::MatrixXd& values() const { return values_; }
    const Eigen::VectorXd& quad_weights() const { return quad_; }
    Eigen::Index n_obs() const { return values_.rows(); }
    Eigen::Index n_points() const { return grid_.size(); }
    double domain_measure() const { return grid_(grid_.size() - 1) - grid_(0); }

private:
    Eigen::VectorXd grid_;
    Eigen::MatrixXd values_;
    Eigen::VectorXd quad_;
};

/// Throws NonFinite / EmptyData naming the first offending entry.
void validate_matrix(const Eigen::MatrixXd& values);

/// Throws NonMonotoneGrid naming the first index that does not increase.
void validate_grid(const Eigen::VectorXd& grid);

/**
 * Assignment of N observations to K non-empty clusters. Labels are
 * 0-based internally; files and reports use 1-based labels.
 */
class Partition {
public:
    Partition(std::vector<int> labels, int k);

    /// Builds a partition with K = max label + 1.
    static Partition from_labels(std::vector<int> labels);

    const std::vector<int>& labels() const { return labels_; }
    int k() const { return k_; }
    std::size_t size() const { return labels_.size(); }
    int operator[](std::size_t i) const { return labels_[i]; }
    std::vector<int> cluster_sizes() const;

    /// Relabels clusters in order of first appearance, so that equal
    /// groupings compare equal regardless of label names.
    Partition canonical() const;

    bool same_grouping(const Partition& other) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> labels_;
    int k_;
};

/// Throws PartitionMismatch unless the partition labels exactly `n` rows.
void check_partition_size(const Partition& part, Eigen::Index n);

/**
 * Hard-thresholded feature weights: nonnegative, unit norm, `m` zeros.
 * `support_shrunk` is set when non-positive dispersions forced more
 * than `m` zeros.
 */
struct WeightVector {
    Eigen::VectorXd w;
    int m = 0;
    bool support_shrunk = false;

    static WeightVector uniform(Eigen::Index p);
    int zero_count() const;
    std::vector<int> support() const;
};

/// Soft-thresholded weights; zeros are incidental, not counted against m.
struct SoftWeights {
    Eigen::VectorXd w;
    double s = 1.0;
    double delta = 0.0;
};

/// A weight function sampled on a grid; zero on a set of measure >= m.
struct WeightFunction {
    Eigen::VectorXd w;
    double m = 0.0;
    double level = 0.0;

    static WeightFunction uniform(const FunctionalDataset& data);

    /// Quadrature measure of the grid points where w vanishes.
    double zero_measure(const Eigen::VectorXd& quad) const;

    double l2_norm(const Eigen::VectorXd& quad) const;
};

/// Closed intervals [lo, hi] of grid points where the weight is positive.
struct Interval {
    double lo;
    double hi;
};
std::vector<Interval> support_intervals(const WeightFunction& w, const Eigen::VectorXd& grid);

template <class Weights>
struct SparseClusterResult {
    Partition partition;
    Weights weights;
    std::vector<double> objective_trace;
    int iterations = 0;
    bool converged = false;
};

}  // namespace sfclust

#endif
