#include "sfclust/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "sfclust/dispersion.hpp"
#include "sfclust/weights.hpp"

namespace sfclust {

void validate_config(const KMeansConfig& cfg, Eigen::Index n) {
    if (cfg.k < 2 || cfg.max_iter_outer < 1 || cfg.max_iter_lloyd < 1 || cfg.n_init < 1 ||
        !(cfg.tol_weights >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "need K >= 2 and positive iteration counts");
    }
    if (cfg.k > n) {
        throw Error(ErrorCode::KTooLarge,
                    "K = " + std::to_string(cfg.k) + " exceeds " + std::to_string(n) + " observations");
    }
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Problem {
    RowMatrix x;           // observations restricted to positive-weight columns
    Eigen::RowVectorXd w;  // their weights
};

Problem restrict_support(const Eigen::MatrixXd& x, const Eigen::VectorXd& col_weights) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < col_weights.size(); ++j) {
        if (col_weights(j) > 0.0) cols.push_back(j);
    }
    Problem pb;
    pb.x.resize(x.rows(), static_cast<Eigen::Index>(cols.size()));
    pb.w.resize(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        pb.x.col(static_cast<Eigen::Index>(c)) = x.col(cols[c]);
        pb.w(static_cast<Eigen::Index>(c)) = col_weights(cols[c]);
    }
    return pb;
}

double distance(const Problem& pb, Eigen::Index i, const RowMatrix& centers, Eigen::Index c) {
    return (pb.w.array() * (pb.x.row(i) - centers.row(c)).array().square()).sum();
}

RowMatrix means_of(const Problem& pb, const std::vector<int>& labels, int k) {
    RowMatrix centers = RowMatrix::Zero(k, pb.x.cols());
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < pb.x.rows(); ++i) {
        const int l = labels[static_cast<std::size_t>(i)];
        centers.row(l) += pb.x.row(i);
        ++sizes[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < k; ++c) {
        if (sizes[static_cast<std::size_t>(c)] > 0) centers.row(c) /= sizes[static_cast<std::size_t>(c)];
    }
    return centers;
}

double wcss_of(const Problem& pb, const std::vector<int>& labels, const RowMatrix& centers) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < pb.x.rows(); ++i) {
        total += distance(pb, i, centers, labels[static_cast<std::size_t>(i)]);
    }
    return total;
}

RowMatrix kmeanspp(const Problem& pb, int k, Rng& rng) {
    const Eigen::Index n = pb.x.rows();
    RowMatrix centers(k, pb.x.cols());
    centers.row(0) = pb.x.row(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n))));
    Eigen::VectorXd mind(n);
    for (Eigen::Index i = 0; i < n; ++i) mind(i) = distance(pb, i, centers, 0);
    for (int c = 1; c < k; ++c) {
        const double total = mind.sum();
        Eigen::Index pick = n - 1;
        if (total > 0.0) {
            const double u = rng.uniform() * total;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += mind(i);
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
        }
        centers.row(c) = pb.x.row(pick);
        for (Eigen::Index i = 0; i < n; ++i) mind(i) = std::min(mind(i), distance(pb, i, centers, c));
    }
    return centers;
}

struct Run {
    std::vector<int> labels;
    RowMatrix centers;
    double wcss;
    std::vector<double> trace;
    int iterations;
};

Run lloyd(const Problem& pb, RowMatrix centers, int k, int max_iter) {
    const Eigen::Index n = pb.x.rows();
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    std::vector<int> next(static_cast<std::size_t>(n));
    std::vector<double> own(static_cast<std::size_t>(n));
    Run run;
    run.iterations = 0;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<int> sizes(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                const double d = distance(pb, i, centers, c);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            next[static_cast<std::size_t>(i)] = arg;
            own[static_cast<std::size_t>(i)] = best;
            ++sizes[static_cast<std::size_t>(arg)];
        }
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0) continue;
            // Re-seed at the farthest observation whose cluster can spare it.
            Eigen::Index far = -1;
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto si = static_cast<std::size_t>(i);
                if (sizes[static_cast<std::size_t>(next[si])] < 2) continue;
                if (far < 0 || own[si] > own[static_cast<std::size_t>(far)]) far = i;
            }
            const auto sf = static_cast<std::size_t>(far);
            --sizes[static_cast<std::size_t>(next[sf])];
            next[sf] = c;
            own[sf] = 0.0;
            ++sizes[static_cast<std::size_t>(c)];
            centers.row(c) = pb.x.row(far);
        }
        ++run.iterations;
        const bool unchanged = next == labels;
        labels = next;
        centers = means_of(pb, labels, k);
        run.trace.push_back(wcss_of(pb, labels, centers));
        if (unchanged) break;
    }
    run.labels = std::move(labels);
    run.centers = std::move(centers);
    run.wcss = run.trace.back();
    return run;
}

}  // namespace

KMeansFit weighted_lloyd(const Eigen::MatrixXd& x, const Eigen::VectorXd& col_weights,
                         const KMeansConfig& cfg, Rng& rng, const Partition* warm) {
    validate_config(cfg, x.rows());
    if (col_weights.size() != x.cols()) {
        throw Error(ErrorCode::DimensionMismatch, std::to_string(col_weights.size()) +
                                                      " weights for " + std::to_string(x.cols()) +
                                                      " columns");
    }
    if ((col_weights.array() < 0.0).any() || !(col_weights.array() > 0.0).any()) {
        throw Error(ErrorCode::InvalidArgument, "weights must be nonnegative and not all zero");
    }
    const Problem pb = restrict_support(x, col_weights);

    std::optional<Run> best;
    int best_start = 0;
    int start = 0;
    auto consider = [&](Run run) {
        if (!best || run.wcss < best->wcss) {
            best = std::move(run);
            best_start = start;
        }
        ++start;
    };
    if (warm != nullptr) {
        check_partition_size(*warm, x.rows());
        if (warm->k() != cfg.k) {
            throw Error(ErrorCode::InvalidArgument, "warm start has a different K");
        }
        consider(lloyd(pb, means_of(pb, warm->labels(), cfg.k), cfg.k, cfg.max_iter_lloyd));
    }
    for (int r = 0; r < cfg.n_init; ++r) {
        consider(lloyd(pb, kmeanspp(pb, cfg.k, rng), cfg.k, cfg.max_iter_lloyd));
    }

    Partition raw(best->labels, cfg.k);
    Partition part = raw.canonical();
    // Reorder centroid rows to follow the canonical labels, in full dimension.
    Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(cfg.k, x.cols());
    std::vector<int> counts(static_cast<std::size_t>(cfg.k), 0);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const int l = part[static_cast<std::size_t>(i)];
        centroids.row(l) += x.row(i);
        ++counts[static_cast<std::size_t>(l)];
    }
    for (int c = 0; c < cfg.k; ++c) centroids.row(c) /= counts[static_cast<std::size_t>(c)];

    KMeansFit fit{std::move(part), std::move(centroids), best->wcss, std::move(best->trace),
                  best->iterations, best_start};
    return fit;
}

KMeansFit weighted_kmeans(const Dataset& data, const Eigen::VectorXd& w, const KMeansConfig& cfg,
                          Rng& rng, const Partition* warm) {
    return weighted_lloyd(data.values(), w, cfg, rng, warm);
}

KMeansFit weighted_kmeans(const Dataset& data, const WeightVector& w, const KMeansConfig& cfg) {
    Rng rng(cfg.seed);
    return weighted_kmeans(data, w.w, cfg, rng);
}

KMeansFit weighted_kmeans(const FunctionalDataset& data, const Eigen::VectorXd& w,
                          const KMeansConfig& cfg, Rng& rng, const Partition* warm) {
    if (w.size() != data.n_points()) {
        throw Error(ErrorCode::GridMismatch, "weight function has " + std::to_string(w.size()) +
                                                 " points for a grid of " +
                                                 std::to_string(data.n_points()));
    }
    const Eigen::VectorXd cols = data.quad_weights().cwiseProduct(w);
    return weighted_lloyd(data.values(), cols, cfg, rng, warm);
}

KMeansFit weighted_kmeans(const FunctionalDataset& data, const WeightFunction& w,
                          const KMeansConfig& cfg) {
    Rng rng(cfg.seed);
    return weighted_kmeans(data, w.w, cfg, rng);
}

KMeansFit plain_kmeans(const Dataset& data, const KMeansConfig& cfg) {
    return weighted_kmeans(data, WeightVector::uniform(data.n_features()), cfg);
}

KMeansFit plain_kmeans(const FunctionalDataset& data, const KMeansConfig& cfg) {
    return weighted_kmeans(data, WeightFunction::uniform(data), cfg);
}

namespace {

/**
 * Alternation shared by all sparse variants. `dispersion(part)` gives the
 * separation scores, `solve(b)` the optimal weights, `columns(w)` the
 * per-column distance weights, `objective(w, b)` the criterion value and
 * `flat(w)` the raw weight values compared between iterations.
 */
template <class Weights, class Dispersion, class Solve, class Columns, class Objective, class Flat>
SparseClusterResult<Weights> alternate(const Eigen::MatrixXd& x, const Eigen::VectorXd& start_cols,
                                       const KMeansConfig& cfg, Dispersion dispersion, Solve solve,
                                       Columns columns, Objective objective, Flat flat) {
    validate_config(cfg, x.rows());
    Rng rng(cfg.seed);
    Partition part = weighted_lloyd(x, start_cols, cfg, rng).partition;
    std::vector<Partition> history{part};

    std::optional<SparseClusterResult<Weights>> out;
    std::optional<Eigen::VectorXd> prev_w;
    bool stopped = false;
    for (int it = 1; it <= cfg.max_iter_outer; ++it) {
        const Eigen::VectorXd b = dispersion(part);
        Weights w = solve(b);
        const double obj = objective(w, b);
        if (out && obj < out->objective_trace.back() - objective_tolerance(out->objective_trace.back())) {
            // Grid discretisation can make the level-set weights marginally
            // suboptimal; keep the better previous state.
            out->converged = true;
            stopped = true;
            break;
        }
        if (!out) {
            out.emplace(SparseClusterResult<Weights>{part, w, {}, 0, false});
        } else {
            out->partition = part;
            out->weights = w;
        }
        out->objective_trace.push_back(obj);
        out->iterations = it;

        const Eigen::VectorXd cur = flat(w);
        if (prev_w && (cur - *prev_w).norm() <= cfg.tol_weights * prev_w->norm()) {
            out->converged = true;
            stopped = true;
            break;
        }
        prev_w = cur;

        Partition next = weighted_lloyd(x, columns(w), cfg, rng, &part).partition;
        if (next == part || std::find(history.begin(), history.end(), next) != history.end()) {
            out->converged = true;
            stopped = true;
            break;
        }
        history.push_back(next);
        part = std::move(next);
    }
    if (!stopped) {
        out->partition = part;
        out->converged = false;
    }
    return std::move(*out);
}

}  // namespace

MvResult sparse_kmeans_mv(const Dataset& data, int m, const KMeansConfig& cfg) {
    const auto p = data.n_features();
    if (m < 0 || m >= p) {
        throw Error(ErrorCode::SparsityOutOfRange,
                    "m = " + std::to_string(m) + " with p = " + std::to_string(p));
    }
    return alternate<WeightVector>(
        data.values(), WeightVector::uniform(p).w, cfg,
        [&](const Partition& part) { return bcss_per_feature(data, part); },
        [&](const Eigen::VectorXd& b) { return hard_threshold_weights(b, m); },
        [](const WeightVector& w) { return w.w; },
        [](const WeightVector& w, const Eigen::VectorXd& b) { return w.w.dot(b); },
        [](const WeightVector& w) { return w.w; });
}

SoftResult sparse_kmeans_soft(const Dataset& data, double s, const KMeansConfig& cfg) {
    const auto p = data.n_features();
    if (!(s >= 1.0) || s > std::sqrt(static_cast<double>(p)) * (1.0 + 1e-12)) {
        throw Error(ErrorCode::SOutOfRange, "s = " + std::to_string(s));
    }
    return alternate<SoftWeights>(
        data.values(), WeightVector::uniform(p).w, cfg,
        [&](const Partition& part) { return bcss_per_feature(data, part); },
        [&](const Eigen::VectorXd& a) { return soft_threshold_weights(a, s); },
        [](const SoftWeights& w) { return w.w; },
        [](const SoftWeights& w, const Eigen::VectorXd& a) { return w.w.dot(a); },
        [](const SoftWeights& w) { return w.w; });
}

FdResult sparse_kmeans_fd(const FunctionalDataset& data, double m, const KMeansConfig& cfg) {
    const Eigen::VectorXd& quad = data.quad_weights();
    if (!(m > 0.0) || !(m < data.domain_measure())) {
        throw Error(ErrorCode::SparsityOutOfRange, "m = " + std::to_string(m) + " outside (0, " +
                                                       std::to_string(data.domain_measure()) + ")");
    }
    return alternate<WeightFunction>(
        data.values(), quad.cwiseProduct(WeightFunction::uniform(data).w), cfg,
        [&](const Partition& part) { return bcss_pointwise(data, part).b; },
        [&](const Eigen::VectorXd& b) { return functional_threshold_weights(b, m, quad); },
        [&](const WeightFunction& w) { return Eigen::VectorXd(quad.cwiseProduct(w.w)); },
        [&](const WeightFunction& w, const Eigen::VectorXd& b) {
            return (quad.array() * w.w.array() * b.array()).sum();
        },
        [](const WeightFunction& w) { return w.w; });
}

}  // namespace sfclust
