#include "sfclust/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sfclust {

MethodSummary summarize(const std::string& method, const std::vector<double>& values) {
    MethodSummary out;
    out.method = method;
    out.runs = static_cast<int>(values.size());
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "spearman inputs differ in length");
    }
    if (x.size() < 2) return NAN;
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return NAN;
    return sxy / std::sqrt(sxx * syy);
}

std::uint64_t run_data_seed(std::uint64_t seed, int run) {
    return derive_seed(seed, 2 * static_cast<std::uint64_t>(run));
}

std::uint64_t run_cluster_seed(std::uint64_t seed, int run) {
    return derive_seed(seed, 2 * static_cast<std::uint64_t>(run) + 1);
}

std::vector<int> default_m_grid(int p, int points) {
    std::vector<int> grid;
    if (p <= 1) return {0};
    points = std::clamp(points, 1, p);
    for (int i = 0; i < points; ++i) {
        const int m = static_cast<int>(std::lround(static_cast<double>(i) * (p - 1) / std::max(points - 1, 1)));
        if (grid.empty() || grid.back() != m) grid.push_back(m);
    }
    return grid;
}

std::vector<double> default_s_grid(int p, int points) {
    const double hi = std::sqrt(static_cast<double>(p));
    const double lo = std::min(1.1, hi);
    std::vector<double> grid;
    if (points <= 1) return {hi};
    for (int i = 0; i < points; ++i) {
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
    }
    grid.back() = hi;
    return grid;
}

Table1Run run_table1_once(const Table1Options& opts, int run) {
    MvScenario sc;
    sc.p = opts.p;
    sc.q = opts.q;
    sc.seed = run_data_seed(opts.seed, run);
    const MvSample sample = gen_mv(sc);

    KMeansConfig cfg = opts.cfg;
    cfg.seed = run_cluster_seed(opts.seed, run);

    Table1Run out;
    out.run = run;
    out.cer_std = cer(plain_kmeans(sample.data, cfg).partition, sample.truth);

    out.m = opts.m ? *opts.m
                   : tune_m_mv(sample.data, default_m_grid(opts.p, opts.grid_points), cfg, opts.gap).m;
    const MvResult hard = sparse_kmeans_mv(sample.data, out.m, cfg);
    out.cer_hard = cer(hard.partition, sample.truth);
    out.w_hard = hard.weights.w;

    out.s = opts.s ? *opts.s
                   : tune_s_mv(sample.data, default_s_grid(opts.p, opts.grid_points / 2), cfg, opts.gap).s;
    const SoftResult soft = sparse_kmeans_soft(sample.data, out.s, cfg);
    out.cer_soft = cer(soft.partition, sample.truth);
    out.w_soft = soft.weights.w;
    return out;
}

Table1Report run_table1(const Table1Options& opts) {
    Table1Report rep;
    rep.opts = opts;
    std::vector<double> s, so, h;
    for (int r = 0; r < opts.runs; ++r) {
        rep.runs.push_back(run_table1_once(opts, r));
        s.push_back(rep.runs.back().cer_std);
        so.push_back(rep.runs.back().cer_soft);
        h.push_back(rep.runs.back().cer_hard);
    }
    rep.summary = {summarize("std", s), summarize("soft", so), summarize("hard", h)};
    return rep;
}

Table2Run run_table2_once(const Table2Options& opts, int run) {
    FdScenario sc;
    sc.grid_size = opts.grid_size;
    sc.seed = run_data_seed(opts.seed, run);
    const FdSample sample = gen_fd(sc);

    KMeansConfig cfg = opts.cfg;
    cfg.seed = run_cluster_seed(opts.seed, run);

    Table2Run out;
    out.run = run;
    out.truth = sample.truth;
    out.grid = sample.data.grid();
    out.std_partition = plain_kmeans(sample.data, cfg).partition;
    out.cer_std = cer(out.std_partition, sample.truth);

    out.m = opts.m ? *opts.m : tune_m_fd(sample.data, opts.m_grid, cfg, opts.gap).m;
    const FdResult res = sparse_kmeans_fd(sample.data, out.m, cfg);
    out.sparse_partition = res.partition;
    out.cer_sparse = cer(res.partition, sample.truth);
    out.weights = res.weights;
    out.iterations = res.iterations;
    out.converged = res.converged;
    out.support = support_intervals(res.weights, out.grid);

    std::vector<double> xs, ws;
    for (Eigen::Index g = 0; g < out.grid.size(); ++g) {
        if (res.weights.w(g) > 0.0) {
            xs.push_back(out.grid(g));
            ws.push_back(res.weights.w(g));
        }
    }
    out.support_spearman = spearman(xs, ws);
    return out;
}

Table2Report run_table2(const Table2Options& opts) {
    Table2Report rep;
    rep.opts = opts;
    std::vector<double> s, sp;
    for (int r = 0; r < opts.runs; ++r) {
        rep.runs.push_back(run_table2_once(opts, r));
        s.push_back(rep.runs.back().cer_std);
        sp.push_back(rep.runs.back().cer_sparse);
    }
    rep.summary = {summarize("std", s), summarize("sparse", sp)};
    return rep;
}

}  // namespace sfclust
