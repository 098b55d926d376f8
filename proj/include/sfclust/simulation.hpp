#ifndef SFCLUST_SIMULATION_HPP
#define SFCLUST_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfclust/kmeans.hpp"
#include "sfclust/metrics.hpp"
#include "sfclust/simgen.hpp"
#include "sfclust/tuning.hpp"

/**
 * @file simulation.hpp
 *
 * @brief Repeated seeded runs of the two benchmark scenarios.
 *
 * Run r draws its data from derive_seed(seed, 2r) and clusters with
 * derive_seed(seed, 2r + 1), so every run redraws both the data and the
 * clustering randomness and any single run can be reproduced alone.
 */

namespace sfclust {

struct MethodSummary {
    std::string method;
    double mean = 0.0;
    double sd = 0.0;  // sample sd; 0 for a single run
    int runs = 0;
};

MethodSummary summarize(const std::string& method, const std::vector<double>& values);

/// Spearman rank correlation, average ranks for ties. NaN if either input
/// is constant or shorter than 2.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

std::uint64_t run_data_seed(std::uint64_t seed, int run);
std::uint64_t run_cluster_seed(std::uint64_t seed, int run);

struct Table1Options {
    int p = 50;
    int q = 10;
    int runs = 20;
    std::uint64_t seed = 1;
    KMeansConfig cfg{.k = 3};
    /// Fixed sparsity; GAP-tuned per run when unset.
    std::optional<int> m;
    /// Fixed lasso budget for the soft baseline; GAP-tuned per run when unset.
    std::optional<double> s;
    int grid_points = 25;
    GapOptions gap{.B_perms = 10};
};

struct Table1Run {
    int run = 0;
    double cer_std = 0.0;
    double cer_soft = 0.0;
    double cer_hard = 0.0;
    int m = 0;
    double s = 0.0;
    Eigen::VectorXd w_hard;
    Eigen::VectorXd w_soft;
};

struct Table1Report {
    Table1Options opts;
    std::vector<Table1Run> runs;
    std::vector<MethodSummary> summary;  // std, soft, hard
};

/// Evenly spaced integer sparsity candidates in [0, p - 1].
std::vector<int> default_m_grid(int p, int points);
/// Candidate lasso budgets, geometric between 1.1 and sqrt(p).
std::vector<double> default_s_grid(int p, int points);

Table1Run run_table1_once(const Table1Options& opts, int run);
Table1Report run_table1(const Table1Options& opts);

struct Table2Options {
    int runs = 10;
    std::uint64_t seed = 1;
    int grid_size = 200;
    KMeansConfig cfg{.k = 2};
    /// Fixed sparsity measure; GAP-tuned per run when unset.
    std::optional<double> m = 0.5;
    std::vector<double> m_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    GapOptions gap{.B_perms = 5};
};

struct Table2Run {
    int run = 0;
    double cer_std = 0.0;
    double cer_sparse = 0.0;
    double m = 0.0;
    Partition truth{std::vector<int>{0}, 1};
    Partition std_partition{std::vector<int>{0}, 1};
    Partition sparse_partition{std::vector<int>{0}, 1};
    WeightFunction weights;
    Eigen::VectorXd grid;
    std::vector<Interval> support;
    /// Spearman correlation of w against x over the support.
    double support_spearman = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct Table2Report {
    Table2Options opts;
    std::vector<Table2Run> runs;
    std::vector<MethodSummary> summary;  // std, sparse
};

Table2Run run_table2_once(const Table2Options& opts, int run);
Table2Report run_table2(const Table2Options& opts);

}  // namespace sfclust

#endif
