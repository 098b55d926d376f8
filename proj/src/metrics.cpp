#include "sfclust/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace sfclust {

namespace {

void check_lengths(const Partition& a, const Partition& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorCode::LengthMismatch, "partitions of " + std::to_string(a.size()) + " and " +
                                                   std::to_string(b.size()) + " observations");
    }
}

long long pairs(long long n) { return n * (n - 1) / 2; }

// Column orders are searched exhaustively up to this many estimated clusters.
constexpr std::size_t kExhaustiveMatch = 8;

}  // namespace

long long disagreeing_pairs(const Partition& a, const Partition& b) {
    const ConfusionMatrix cm = confusion(a, b);
    long long joint = 0;
    std::vector<long long> cols(cm.col_labels.size(), 0);
    long long rows = 0;
    for (const auto& row : cm.counts) {
        long long rsum = 0;
        for (std::size_t e = 0; e < row.size(); ++e) {
            joint += pairs(row[e]);
            rsum += row[e];
            cols[e] += row[e];
        }
        rows += pairs(rsum);
    }
    long long colpairs = 0;
    for (long long c : cols) colpairs += pairs(c);
    // Pairs together in exactly one of the two partitions.
    return rows + colpairs - 2 * joint;
}

double cer(const Partition& a, const Partition& b) {
    check_lengths(a, b);
    const auto n = static_cast<long long>(a.size());
    if (n < 2) return 0.0;
    return static_cast<double>(disagreeing_pairs(a, b)) / static_cast<double>(pairs(n));
}

ConfusionMatrix confusion(const Partition& truth, const Partition& estimate) {
    check_lengths(truth, estimate);
    ConfusionMatrix cm;
    cm.counts.assign(static_cast<std::size_t>(truth.k()),
                     std::vector<long long>(static_cast<std::size_t>(estimate.k()), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++cm.counts[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(estimate[i])];
    }
    for (int t = 0; t < truth.k(); ++t) cm.row_labels.push_back(t);
    for (int e = 0; e < estimate.k(); ++e) cm.col_labels.push_back(e);
    return cm;
}

ConfusionMatrix matched_confusion(const Partition& truth, const Partition& estimate) {
    const ConfusionMatrix raw = confusion(truth, estimate);
    const std::size_t nr = raw.counts.size();
    const std::size_t nc = raw.col_labels.size();

    std::vector<int> order(nc);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t diag = std::min(nr, nc);
    auto trace = [&](const std::vector<int>& cols) {
        long long t = 0;
        for (std::size_t r = 0; r < diag; ++r) t += raw.counts[r][static_cast<std::size_t>(cols[r])];
        return t;
    };

    if (nc <= kExhaustiveMatch) {
        // Every column order; the first one with the largest trace wins.
        std::vector<int> perm = order;
        long long best = trace(order);
        while (std::next_permutation(perm.begin(), perm.end())) {
            const long long t = trace(perm);
            if (t > best) {
                best = t;
                order = perm;
            }
        }
    } else {
        // Greedy: repeatedly take the largest unused cell and pin its column
        // to its row. Ties go to the lowest row, then lowest column.
        std::vector<int> col_for_row(nr, -1);
        std::vector<bool> col_used(nc, false);
        for (std::size_t step = 0; step < diag; ++step) {
            long long best = -1;
            std::size_t br = 0, bc = 0;
            for (std::size_t r = 0; r < nr; ++r) {
                if (col_for_row[r] >= 0) continue;
                for (std::size_t c = 0; c < nc; ++c) {
                    if (!col_used[c] && raw.counts[r][c] > best) {
                        best = raw.counts[r][c];
                        br = r;
                        bc = c;
                    }
                }
            }
            col_for_row[br] = static_cast<int>(bc);
            col_used[bc] = true;
        }
        order.clear();
        for (std::size_t r = 0; r < nr; ++r) {
            if (col_for_row[r] >= 0) order.push_back(col_for_row[r]);
        }
        for (std::size_t c = 0; c < nc; ++c) {
            if (!col_used[c]) order.push_back(static_cast<int>(c));
        }
    }

    ConfusionMatrix out;
    out.row_labels = raw.row_labels;
    out.counts.assign(nr, std::vector<long long>(nc, 0));
    for (std::size_t c = 0; c < nc; ++c) {
        const auto src = static_cast<std::size_t>(order[c]);
        out.col_labels.push_back(raw.col_labels[src]);
        for (std::size_t r = 0; r < nr; ++r) out.counts[r][c] = raw.counts[r][src];
    }
    return out;
}

long long ConfusionMatrix::total() const {
    long long t = 0;
    for (const auto& row : counts) {
        for (long long v : row) t += v;
    }
    return t;
}

long long ConfusionMatrix::off_diagonal() const {
    long long t = 0;
    for (std::size_t r = 0; r < counts.size(); ++r) {
        for (std::size_t c = 0; c < counts[r].size(); ++c) {
            if (r != c) t += counts[r][c];
        }
    }
    return t;
}

}  // namespace sfclust
