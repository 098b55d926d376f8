#include "sfclust/tuning.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace sfclust {

namespace {

constexpr std::uint64_t kPermStream = 0x7065726dULL;

void check_options(const GapOptions& opts) {
    if (opts.B_perms < 1) throw Error(ErrorCode::InvalidArgument, "B_perms must be >= 1");
    if (opts.n_subdomains < 1) throw Error(ErrorCode::InvalidArgument, "n_subdomains must be >= 1");
}

// Objective of the final weight step, or nothing when the run degenerates.
template <class Run>
std::optional<double> objective_of(Run&& run) {
    try {
        const auto res = run();
        const double o = res.objective_trace.back();
        if (!(o > 0.0) || !std::isfinite(o)) return std::nullopt;
        return o;
    } catch (const Error& e) {
        if (is_numerical(e.code())) return std::nullopt;
        throw;
    }
}

template <class Data, class Param, class Permute, class Solve>
GapCurve gap_curve(const Data& data, const std::vector<Param>& grid, const KMeansConfig& cfg,
                   const GapOptions& opts, Permute permute, Solve solve) {
    check_options(opts);
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty candidate grid");

    std::vector<Data> perms;
    perms.reserve(static_cast<std::size_t>(opts.B_perms));
    for (int b = 0; b < opts.B_perms; ++b) {
        Rng rng(derive_seed(cfg.seed, kPermStream + static_cast<std::uint64_t>(b)));
        perms.push_back(permute(data, rng));
    }

    GapCurve curve;
    curve.B_perms = opts.B_perms;
    for (const Param& m : grid) {
        curve.m_grid.push_back(static_cast<double>(m));
        const auto obs = objective_of([&] { return solve(data, m); });
        std::vector<double> logs;
        bool ok = obs.has_value();
        for (std::size_t b = 0; ok && b < perms.size(); ++b) {
            const auto o = objective_of([&] { return solve(perms[b], m); });
            if (!o) {
                ok = false;
            } else {
                logs.push_back(std::log(*o));
            }
        }
        if (!ok) {
            curve.excluded.push_back(true);
            curve.obs_log_obj.push_back(obs ? std::log(*obs) : NAN);
            curve.perm_log_obj_mean.push_back(NAN);
            curve.perm_log_obj_sd.push_back(NAN);
            curve.gap.push_back(NAN);
            continue;
        }
        const double n = static_cast<double>(logs.size());
        const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
        double ss = 0.0;
        for (double l : logs) ss += (l - mean) * (l - mean);
        const double sd = logs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        curve.excluded.push_back(false);
        curve.obs_log_obj.push_back(std::log(*obs));
        curve.perm_log_obj_mean.push_back(mean);
        curve.perm_log_obj_sd.push_back(sd);
        curve.gap.push_back(std::log(*obs) - mean);
    }

    // Largest gap; ties to the smaller parameter value.
    int best = -1;
    for (std::size_t i = 0; i < curve.gap.size(); ++i) {
        if (curve.excluded[i]) continue;
        const auto bi = static_cast<std::size_t>(best);
        if (best < 0 || curve.gap[i] > curve.gap[bi] ||
            (curve.gap[i] == curve.gap[bi] && curve.m_grid[i] < curve.m_grid[bi])) {
            best = static_cast<int>(i);
        }
    }
    if (best < 0) {
        throw Error(ErrorCode::DegenerateObjective, "no candidate has a positive objective");
    }
    if (opts.one_sd_rule) {
        const auto bi = static_cast<std::size_t>(best);
        const double floor = curve.gap[bi] - curve.perm_log_obj_sd[bi];
        for (std::size_t i = 0; i < curve.gap.size(); ++i) {
            if (!curve.excluded[i] && curve.gap[i] >= floor &&
                curve.m_grid[i] < curve.m_grid[static_cast<std::size_t>(best)]) {
                best = static_cast<int>(i);
            }
        }
    }
    curve.best_index = best;
    return curve;
}

}  // namespace

Dataset permute_features(const Dataset& data, Rng& rng) {
    Eigen::MatrixXd x = data.values();
    std::vector<double> col(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index i = 0; i < x.rows(); ++i) col[static_cast<std::size_t>(i)] = x(i, j);
        rng.shuffle(std::span<double>(col));
        for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = col[static_cast<std::size_t>(i)];
    }
    return Dataset(std::move(x), data.feature_names());
}

std::vector<std::vector<Eigen::Index>> subdomain_blocks(const Eigen::VectorXd& grid, int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n_subdomains must be >= 1");
    validate_grid(grid);
    const double lo = grid(0);
    const double len = grid(grid.size() - 1) - lo;
    std::vector<std::vector<Eigen::Index>> blocks(static_cast<std::size_t>(n));
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
        auto b = static_cast<int>(std::floor((grid(g) - lo) / len * n));
        b = std::clamp(b, 0, n - 1);
        blocks[static_cast<std::size_t>(b)].push_back(g);
    }
    return blocks;
}

FunctionalDataset permute_subdomains(const FunctionalDataset& data, int n_subdomains, Rng& rng) {
    const auto blocks = subdomain_blocks(data.grid(), n_subdomains);
    const Eigen::MatrixXd& src = data.values();
    Eigen::MatrixXd out(src.rows(), src.cols());
    std::vector<Eigen::Index> ids(static_cast<std::size_t>(src.rows()));
    for (const auto& block : blocks) {
        std::iota(ids.begin(), ids.end(), Eigen::Index{0});
        rng.shuffle(std::span<Eigen::Index>(ids));
        for (Eigen::Index i = 0; i < src.rows(); ++i) {
            for (Eigen::Index g : block) out(i, g) = src(ids[static_cast<std::size_t>(i)], g);
        }
    }
    return FunctionalDataset(data.grid(), std::move(out));
}

MvTuneResult tune_m_mv(const Dataset& data, const std::vector<int>& m_grid, const KMeansConfig& cfg,
                       const GapOptions& opts) {
    for (int m : m_grid) {
        if (m < 0 || m >= data.n_features()) {
            throw Error(ErrorCode::SparsityOutOfRange, "candidate m = " + std::to_string(m));
        }
    }
    GapCurve curve = gap_curve(
        data, m_grid, cfg, opts, [](const Dataset& d, Rng& rng) { return permute_features(d, rng); },
        [&](const Dataset& d, int m) { return sparse_kmeans_mv(d, m, cfg); });
    const int m = m_grid[static_cast<std::size_t>(curve.best_index)];
    return {m, std::move(curve)};
}

FdTuneResult tune_m_fd(const FunctionalDataset& data, const std::vector<double>& m_grid,
                       const KMeansConfig& cfg, const GapOptions& opts) {
    for (double m : m_grid) {
        if (!(m > 0.0) || !(m < data.domain_measure())) {
            throw Error(ErrorCode::SparsityOutOfRange, "candidate m = " + std::to_string(m));
        }
    }
    GapCurve curve = gap_curve(
        data, m_grid, cfg, opts,
        [&](const FunctionalDataset& d, Rng& rng) { return permute_subdomains(d, opts.n_subdomains, rng); },
        [&](const FunctionalDataset& d, double m) { return sparse_kmeans_fd(d, m, cfg); });
    const double m = m_grid[static_cast<std::size_t>(curve.best_index)];
    return {m, std::move(curve)};
}

SoftTuneResult tune_s_mv(const Dataset& data, const std::vector<double>& s_grid,
                         const KMeansConfig& cfg, const GapOptions& opts) {
    const double s_max = std::sqrt(static_cast<double>(data.n_features()));
    for (double s : s_grid) {
        if (!(s >= 1.0) || s > s_max * (1.0 + 1e-12)) {
            throw Error(ErrorCode::SOutOfRange, "candidate s = " + std::to_string(s));
        }
    }
    GapCurve curve = gap_curve(
        data, s_grid, cfg, opts, [](const Dataset& d, Rng& rng) { return permute_features(d, rng); },
        [&](const Dataset& d, double s) { return sparse_kmeans_soft(d, s, cfg); });
    const double s = s_grid[static_cast<std::size_t>(curve.best_index)];
    return {s, std::move(curve)};
}

}  // namespace sfclust
