#ifndef SFCLUST_METRICS_HPP
#define SFCLUST_METRICS_HPP

#include <vector>

#include "sfclust/types.hpp"

namespace sfclust {

/// Classification error rate: 1 - Rand index, the fraction of unordered
/// pairs on which the two partitions disagree about co-membership.
double cer(const Partition& a, const Partition& b);

/// Number of disagreeing pairs, computed from the contingency table.
long long disagreeing_pairs(const Partition& a, const Partition& b);

struct ConfusionMatrix {
    /// counts[t][e] = #{i : truth t, estimate e}
    std::vector<std::vector<long long>> counts;
    /// Truth and estimate labels shown on each row / column.
    std::vector<int> row_labels;
    std::vector<int> col_labels;

    long long total() const;
    long long off_diagonal() const;
};

/// Raw confusion matrix, rows and columns in label order.
ConfusionMatrix confusion(const Partition& truth, const Partition& estimate);

/// Confusion matrix with estimate columns reordered so the diagonal carries
/// the largest total count. Exact search over column orders for up to 8
/// estimated clusters, greedy matching beyond that.
ConfusionMatrix matched_confusion(const Partition& truth, const Partition& estimate);

}  // namespace sfclust

#endif
