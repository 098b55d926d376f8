#ifndef SFCLUST_TUNING_HPP
#define SFCLUST_TUNING_HPP

#include <vector>

#include "sfclust/kmeans.hpp"
#include "sfclust/rng.hpp"
#include "sfclust/types.hpp"

/**
 * @file tuning.hpp
 *
 * @brief Permutation GAP statistic for choosing the sparsity parameter.
 *
 * For every candidate value the sparse clustering is run on the observed
 * data and on B permuted copies in which cluster structure has been
 * destroyed, and
 *
 *   gap = log O(observed) - mean_b log O(permuted_b),
 *
 * with O the converged objective. The candidate with the largest gap wins;
 * ties go to the less sparse candidate. The same B permuted copies are
 * reused for every candidate.
 */

namespace sfclust {

struct GapOptions {
    int B_perms = 20;
    int n_subdomains = 20;
    /// Pick the least sparse candidate within one permutation sd of the best.
    bool one_sd_rule = false;
};

struct GapCurve {
    std::vector<double> m_grid;
    std::vector<double> gap;
    std::vector<double> obs_log_obj;
    std::vector<double> perm_log_obj_mean;
    std::vector<double> perm_log_obj_sd;
    /// Candidates dropped because some objective was not positive.
    std::vector<bool> excluded;
    int B_perms = 0;
    int best_index = -1;
};

struct MvTuneResult {
    int m;
    GapCurve curve;
};

struct FdTuneResult {
    double m;
    GapCurve curve;
};

struct SoftTuneResult {
    double s;
    GapCurve curve;
};

/// Permutes every column independently across observations.
Dataset permute_features(const Dataset& data, Rng& rng);

/// Grid indices of `n` contiguous blocks of equal length covering the domain.
std::vector<std::vector<Eigen::Index>> subdomain_blocks(const Eigen::VectorXd& grid, int n);

/// Within each sub-domain block, reassigns curve segments among curves by an
/// independent random permutation of the curve identities.
FunctionalDataset permute_subdomains(const FunctionalDataset& data, int n_subdomains, Rng& rng);

MvTuneResult tune_m_mv(const Dataset& data, const std::vector<int>& m_grid, const KMeansConfig& cfg,
                       const GapOptions& opts = {});

FdTuneResult tune_m_fd(const FunctionalDataset& data, const std::vector<double>& m_grid,
                       const KMeansConfig& cfg, const GapOptions& opts = {});

/// Grid search of the lasso budget s for the soft-thresholding baseline.
SoftTuneResult tune_s_mv(const Dataset& data, const std::vector<double>& s_grid,
                         const KMeansConfig& cfg, const GapOptions& opts = {});

}  // namespace sfclust

#endif
