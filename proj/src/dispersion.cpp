#include "sfclust/dispersion.hpp"

#include <string>
#include <vector>

namespace sfclust {

namespace {

// Total minus within-cluster centred sums of squares, per column. Means are
// taken first so the squares are of centred values; summation order is fixed
// by the column traversal.
Eigen::VectorXd between_ss(const Eigen::MatrixXd& x, const Partition& part) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    const int k = part.k();
    const std::vector<int> sizes = part.cluster_sizes();
    const std::vector<int>& labels = part.labels();

    Eigen::VectorXd out(p);
    std::vector<double> sums(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto col = x.col(j);
        // a constant column has no dispersion; skip the round-off of its mean
        if (col.minCoeff() == col.maxCoeff()) {
            out(j) = 0.0;
            continue;
        }
        std::fill(sums.begin(), sums.end(), 0.0);
        double total = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            total += col(i);
            sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] += col(i);
        }
        const double mean = total / static_cast<double>(n);
        for (int c = 0; c < k; ++c) sums[static_cast<std::size_t>(c)] /= sizes[static_cast<std::size_t>(c)];

        double tss = 0.0;
        double wss = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double dt = col(i) - mean;
            const double dw = col(i) - sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
            tss += dt * dt;
            wss += dw * dw;
        }
        out(j) = tss - wss;
    }
    return out;
}

}  // namespace

Eigen::VectorXd bcss_per_feature(const Dataset& data, const Partition& part) {
    check_partition_size(part, data.n_obs());
    // (1/N) sum over ordered pairs = 2 * centred sum of squares.
    return 2.0 * between_ss(data.values(), part);
}

DispersionFunction bcss_pointwise(const FunctionalDataset& data, const Partition& part) {
    check_partition_size(part, data.n_obs());
    DispersionFunction out;
    out.b = between_ss(data.values(), part);
    for (Eigen::Index g = 0; g < out.b.size(); ++g) {
        if (out.b(g) < 0.0) {
            out.b(g) = 0.0;
            out.clamped = true;
        }
    }
    return out;
}

double weighted_sq_distance_mv(const Eigen::Ref<const Eigen::VectorXd>& x,
                               const Eigen::Ref<const Eigen::VectorXd>& y,
                               const Eigen::VectorXd& w) {
    if (x.size() != y.size() || x.size() != w.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "rows of length " + std::to_string(x.size()) + " and " +
                        std::to_string(y.size()) + " with " + std::to_string(w.size()) + " weights");
    }
    return (w.array() * (x - y).array().square()).sum();
}

double weighted_sq_distance(const Eigen::Ref<const Eigen::VectorXd>& f,
                            const Eigen::Ref<const Eigen::VectorXd>& h, const Eigen::VectorXd& w,
                            const Eigen::VectorXd& quad) {
    if (f.size() != h.size() || f.size() != w.size() || f.size() != quad.size()) {
        throw Error(ErrorCode::GridMismatch, "curves, weight and quadrature lengths differ");
    }
    return (quad.array() * w.array() * (f - h).array().square()).sum();
}

}  // namespace sfclust
