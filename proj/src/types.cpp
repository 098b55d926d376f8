#include "sfclust/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sfclust {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::EmptyData: return "EmptyData";
        case ErrorCode::NonMonotoneGrid: return "NonMonotoneGrid";
        case ErrorCode::InvalidPartition: return "InvalidPartition";
        case ErrorCode::SparsityOutOfRange: return "SparsityOutOfRange";
        case ErrorCode::NonPositiveDispersion: return "NonPositiveDispersion";
        case ErrorCode::SOutOfRange: return "SOutOfRange";
        case ErrorCode::AllZeroAfterThreshold: return "AllZeroAfterThreshold";
        case ErrorCode::DegenerateDispersion: return "DegenerateDispersion";
        case ErrorCode::PartitionMismatch: return "PartitionMismatch";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::DegenerateObjective: return "DegenerateObjective";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

bool is_numerical(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveDispersion:
        case ErrorCode::AllZeroAfterThreshold:
        case ErrorCode::DegenerateDispersion:
        case ErrorCode::DegenerateObjective:
            return true;
        default:
            return false;
    }
}

void validate_matrix(const Eigen::MatrixXd& values) {
    if (values.rows() < 2 || values.cols() < 1) {
        throw Error(ErrorCode::EmptyData, "need at least 2 rows and 1 column, got " +
                                              std::to_string(values.rows()) + "x" +
                                              std::to_string(values.cols()));
    }
    // Row-major scan so the reported entry is the first one in reading order.
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (!std::isfinite(values(i, j))) {
                throw Error(ErrorCode::NonFinite,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

void validate_grid(const Eigen::VectorXd& grid) {
    if (grid.size() < 2) {
        throw Error(ErrorCode::EmptyData, "grid needs at least 2 points");
    }
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
        if (!std::isfinite(grid(g))) {
            throw Error(ErrorCode::NonFinite, "grid index " + std::to_string(g));
        }
        if (g > 0 && !(grid(g) > grid(g - 1))) {
            throw Error(ErrorCode::NonMonotoneGrid, "grid index " + std::to_string(g));
        }
    }
}

Dataset::Dataset(Eigen::MatrixXd values, std::vector<std::string> feature_names)
    : values_(std::move(values)), feature_names_(std::move(feature_names)) {
    validate_matrix(values_);
    if (!feature_names_.empty() && static_cast<Eigen::Index>(feature_names_.size()) != values_.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "feature_names has " +
                                                      std::to_string(feature_names_.size()) +
                                                      " entries for " +
                                                      std::to_string(values_.cols()) + " columns");
    }
}

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& grid) {
    validate_grid(grid);
    const Eigen::Index n = grid.size();
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    for (Eigen::Index g = 0; g + 1 < n; ++g) {
        const double half = 0.5 * (grid(g + 1) - grid(g));
        q(g) += half;
        q(g + 1) += half;
    }
    return q;
}

FunctionalDataset::FunctionalDataset(Eigen::VectorXd grid, Eigen::MatrixXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    validate_grid(grid_);
    validate_matrix(values_);
    if (values_.cols() != grid_.size()) {
        throw Error(ErrorCode::GridMismatch, "curves have " + std::to_string(values_.cols()) +
                                                 " samples for a grid of " +
                                                 std::to_string(grid_.size()));
    }
    quad_ = trapezoid_weights(grid_);
}

Partition::Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
    if (k_ < 1) {
        throw Error(ErrorCode::InvalidPartition, "K must be positive");
    }
    std::vector<int> sizes(static_cast<std::size_t>(k_), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const int l = labels_[i];
        if (l < 0 || l >= k_) {
            throw Error(ErrorCode::InvalidPartition,
                        "label " + std::to_string(l) + " at index " + std::to_string(i) +
                            " outside [0," + std::to_string(k_) + ")");
        }
        ++sizes[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < k_; ++c) {
        if (sizes[static_cast<std::size_t>(c)] == 0) {
            throw Error(ErrorCode::InvalidPartition, "cluster " + std::to_string(c) + " is empty");
        }
    }
}

Partition Partition::from_labels(std::vector<int> labels) {
    const int k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    return Partition(std::move(labels), k);
}

std::vector<int> Partition::cluster_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(k_), 0);
    for (int l : labels_) ++sizes[static_cast<std::size_t>(l)];
    return sizes;
}

Partition Partition::canonical() const {
    std::vector<int> remap(static_cast<std::size_t>(k_), -1);
    std::vector<int> out(labels_.size());
    int next = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        int& r = remap[static_cast<std::size_t>(labels_[i])];
        if (r < 0) r = next++;
        out[i] = r;
    }
    return Partition(std::move(out), k_);
}

bool Partition::same_grouping(const Partition& other) const {
    return k_ == other.k_ && canonical().labels_ == other.canonical().labels_;
}

void check_partition_size(const Partition& part, Eigen::Index n) {
    if (static_cast<Eigen::Index>(part.size()) != n) {
        throw Error(ErrorCode::PartitionMismatch, "partition labels " + std::to_string(part.size()) +
                                                      " observations, data has " +
                                                      std::to_string(n));
    }
}

WeightVector WeightVector::uniform(Eigen::Index p) {
    WeightVector out;
    out.w = Eigen::VectorXd::Constant(p, 1.0 / std::sqrt(static_cast<double>(p)));
    out.m = 0;
    return out;
}

int WeightVector::zero_count() const {
    return static_cast<int>((w.array() == 0.0).count());
}

std::vector<int> WeightVector::support() const {
    std::vector<int> idx;
    for (Eigen::Index j = 0; j < w.size(); ++j) {
        if (w(j) > 0.0) idx.push_back(static_cast<int>(j));
    }
    return idx;
}

WeightFunction WeightFunction::uniform(const FunctionalDataset& data) {
    WeightFunction out;
    out.w = Eigen::VectorXd::Constant(data.n_points(), 1.0 / std::sqrt(data.domain_measure()));
    out.m = 0.0;
    out.level = 0.0;
    return out;
}

double WeightFunction::zero_measure(const Eigen::VectorXd& quad) const {
    double total = 0.0;
    for (Eigen::Index g = 0; g < w.size(); ++g) {
        if (w(g) == 0.0) total += quad(g);
    }
    return total;
}

double WeightFunction::l2_norm(const Eigen::VectorXd& quad) const {
    return std::sqrt((quad.array() * w.array().square()).sum());
}

std::vector<Interval> support_intervals(const WeightFunction& w, const Eigen::VectorXd& grid) {
    std::vector<Interval> out;
    Eigen::Index g = 0;
    const Eigen::Index n = w.w.size();
    while (g < n) {
        if (w.w(g) > 0.0) {
            Eigen::Index end = g;
            while (end + 1 < n && w.w(end + 1) > 0.0) ++end;
            out.push_back({grid(g), grid(end)});
            g = end + 1;
        } else {
            ++g;
        }
    }
    return out;
}

}  // namespace sfclust
