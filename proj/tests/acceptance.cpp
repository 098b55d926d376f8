// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sfclust/dispersion.hpp"
#include "sfclust/kmeans.hpp"
#include "sfclust/metrics.hpp"
#include "sfclust/simgen.hpp"
#include "sfclust/simulation.hpp"
#include "sfclust/tuning.hpp"
#include "sfclust/weights.hpp"

using namespace sfclust;

namespace {

// Tolerances and limits.
constexpr int kSolverTrials = 10000;
constexpr double kSolverWeightTol = 1e-12;
constexpr double kSolverSeconds = 10.0;

constexpr int kSoftTrials = 1000;
constexpr double kSoftNormTol = 1e-9;
constexpr double kSoftL1Tol = 1e-8;
constexpr double kSoftSeconds = 5.0;

constexpr double kTab1HardMax = 0.05;
constexpr double kTab1SoftMax = 0.06;
constexpr double kTab1StdMin = 0.10;
constexpr double kTab1Seconds = 300.0;

constexpr double kTab2SparseMax = 0.15;
constexpr double kTab2StdMin = 0.30;
constexpr int kTab2MinWins = 9;
constexpr double kTab2Seconds = 300.0;

constexpr double kSupportLoMin = 0.45;
constexpr double kSupportLoMax = 0.60;
constexpr double kSpearmanMin = 0.99;
constexpr int kShapeMinRuns = 8;

constexpr int kTab3Run = 4;  // fifth run of the functional study, master seed 1
constexpr long long kTab3MaxOffDiagonal = 10;

constexpr double kGapMinZeroFraction = 0.40;
constexpr int kGapMinInformative = 8;

constexpr int kTraceProblems = 100;
constexpr double kBcssRelTol = 1e-9;
constexpr int kCerPairs = 200;

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void note(const std::string& what) {
    std::printf("       %s\n", what.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void criterion1() {
    const auto t0 = Clock::now();
    Rng rng(0xC1);
    int support_mismatch = 0;
    int value_mismatch = 0;
    double worst = 0.0;
    for (int t = 0; t < kSolverTrials; ++t) {
        const int p = 1 + static_cast<int>(rng.index(8));
        const int m = static_cast<int>(rng.index(static_cast<std::size_t>(p)));
        Eigen::VectorXd b(p);
        for (int j = 0; j < p; ++j) b(j) = 1e-3 + rng.uniform() * std::exp(4.0 * rng.normal());
        const auto best = oracle::best_support(b, m);
        const WeightVector w = hard_threshold_weights(b, m);
        const auto supp = w.support();
        if (supp != best.support) ++support_mismatch;
        double ss = 0.0;
        for (int j : supp) ss += b(j) * b(j);
        if (std::sqrt(ss) != best.value) ++value_mismatch;
        worst = std::max(worst, (w.w - oracle::weights_on_support(b, best.support)).cwiseAbs().maxCoeff());
    }
    const double secs = seconds_since(t0);
    report(1, support_mismatch == 0 && value_mismatch == 0 && worst <= kSolverWeightTol && secs < kSolverSeconds,
           fmt("hard solver vs exhaustive enumeration, %d cases: %d support / %d value mismatches, "
               "max weight error %.2e (tol %.0e), %.2fs (limit %.0fs)",
               kSolverTrials, support_mismatch, value_mismatch, worst, kSolverWeightTol, secs, kSolverSeconds));
}

void criterion2() {
    const auto t0 = Clock::now();
    Rng rng(0xC2);
    int bad = 0;
    int active = 0;
    double worst_norm = 0.0, worst_l1 = 0.0, worst_eq = 0.0;
    for (int t = 0; t < kSoftTrials; ++t) {
        const int p = 2 + static_cast<int>(rng.index(99));
        Eigen::VectorXd a(p);
        for (int j = 0; j < p; ++j) a(j) = rng.normal() * std::exp(rng.normal());
        a(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(p)))) = std::abs(rng.normal()) + 0.01;
        const double s = 1.0 + rng.uniform() * (std::sqrt(static_cast<double>(p)) - 1.0);
        const SoftWeights w = soft_threshold_weights(a, s);
        const double norm_err = std::abs(w.w.norm() - 1.0);
        const double l1_excess = w.w.lpNorm<1>() - s;
        worst_norm = std::max(worst_norm, norm_err);
        worst_l1 = std::max(worst_l1, l1_excess);
        bool ok = norm_err <= kSoftNormTol && l1_excess <= kSoftL1Tol;
        if (w.delta > 0.0) {
            ++active;
            worst_eq = std::max(worst_eq, std::abs(l1_excess));
            ok = ok && std::abs(l1_excess) <= kSoftL1Tol;
        }
        if (!ok) ++bad;
    }
    const double secs = seconds_since(t0);
    report(2, bad == 0 && secs < kSoftSeconds,
           fmt("soft solver constraints, %d cases (%d with delta > 0): %d violations, "
               "max | ||w||_2 - 1 | %.1e, max ||w||_1 - s %.1e, max equality gap %.1e, %.2fs (limit %.0fs)",
               kSoftTrials, active, bad, worst_norm, worst_l1, worst_eq, secs, kSoftSeconds));
}

Table1Report tab1_p50;  // reused by the GAP diagnostics

void criterion3() {
    const auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (int p : {50, 200, 500}) {
        Table1Options opts;
        opts.p = p;
        const Table1Report rep = run_table1(opts);
        if (p == 50) tab1_p50 = rep;
        const auto& st = rep.summary[0];
        const auto& so = rep.summary[1];
        const auto& hd = rep.summary[2];
        bool ok = hd.mean <= kTab1HardMax && so.mean <= kTab1SoftMax;
        if (p != 50) ok = ok && st.mean >= kTab1StdMin;
        pass = pass && ok;
        note(fmt("p=%d: std %.4f (%.4f)  soft %.4f (%.4f)  hard %.4f (%.4f)  over %d runs", p, st.mean, st.sd,
                 so.mean, so.sd, hd.mean, hd.sd, st.runs));
    }
    const double secs = seconds_since(t0);
    report(3, pass && secs < kTab1Seconds,
           fmt("multivariate study: hard <= %.2f, soft <= %.2f, std >= %.2f at p in {200,500}; %.1fs (limit %.0fs)",
               kTab1HardMax, kTab1SoftMax, kTab1StdMin, secs, kTab1Seconds));
}

Table2Report tab2;

void criterion4() {
    const auto t0 = Clock::now();
    tab2 = run_table2(Table2Options{});
    const double secs = seconds_since(t0);
    int wins = 0;
    for (const auto& r : tab2.runs) wins += r.cer_sparse < r.cer_std ? 1 : 0;
    const auto& st = tab2.summary[0];
    const auto& sp = tab2.summary[1];
    const bool pass = sp.mean <= kTab2SparseMax && st.mean >= kTab2StdMin && wins >= kTab2MinWins &&
                      secs < kTab2Seconds;
    report(4, pass,
           fmt("functional study, %d runs: sparse %.4f (%.4f) <= %.2f, std %.4f (%.4f) >= %.2f, "
               "sparse better in %d/%d (need %d), %.1fs (limit %.0fs)",
               sp.runs, sp.mean, sp.sd, kTab2SparseMax, st.mean, st.sd, kTab2StdMin, wins, sp.runs, kTab2MinWins,
               secs, kTab2Seconds));
}

void criterion5() {
    int good = 0;
    for (const auto& r : tab2.runs) {
        const double lo = r.support.empty() ? NAN : r.support.front().lo;
        const double main_lo = r.support.empty() ? NAN : r.support.back().lo;
        const bool ok = lo >= kSupportLoMin && lo <= kSupportLoMax && r.support_spearman >= kSpearmanMin;
        good += ok ? 1 : 0;
        note(fmt("run %2d: support lower endpoint %.4f, %zu interval(s), last interval [%.4f, %.4f], "
                 "Spearman %.4f, cer %.4f",
                 r.run + 1, lo, r.support.size(), main_lo, r.support.empty() ? NAN : r.support.back().hi,
                 r.support_spearman, r.cer_sparse));
    }
    report(5, good >= kShapeMinRuns,
           fmt("weight function shape: lower endpoint in [%.2f, %.2f] and Spearman >= %.2f on %d/%zu runs "
               "(need %d)",
               kSupportLoMin, kSupportLoMax, kSpearmanMin, good, tab2.runs.size(), kShapeMinRuns));
}

void criterion6() {
    const Table2Run& r = tab2.runs[static_cast<std::size_t>(kTab3Run)];
    const ConfusionMatrix cm = matched_confusion(r.truth, r.sparse_partition);
    std::string rows;
    for (const auto& row : cm.counts) {
        rows += " [";
        for (std::size_t c = 0; c < row.size(); ++c) rows += (c ? " " : "") + std::to_string(row[c]);
        rows += "]";
    }
    report(6, cm.off_diagonal() <= kTab3MaxOffDiagonal,
           fmt("confusion of run %d: off-diagonal %lld of %lld (limit %lld), matrix%s", kTab3Run + 1,
               cm.off_diagonal(), cm.total(), kTab3MaxOffDiagonal, rows.c_str()));
}

void criterion7() {
    const auto t0 = Clock::now();
    MvScenario sc;
    sc.seed = run_data_seed(1, 0);
    const MvSample sample = gen_mv(sc);
    KMeansConfig cfg;
    cfg.k = 3;
    cfg.seed = run_cluster_seed(1, 0);
    const MvTuneResult tuned = tune_m_mv(sample.data, default_m_grid(sc.p, 25), cfg, GapOptions{.B_perms = 10});
    const MvResult res = sparse_kmeans_mv(sample.data, tuned.m, cfg);
    int informative = 0;
    for (int j = 0; j < sc.q; ++j) informative += res.weights.w(j) > 0.0 ? 1 : 0;
    const double zero_fraction = static_cast<double>(res.weights.zero_count()) / sc.p;
    report(7, zero_fraction >= kGapMinZeroFraction && informative >= kGapMinInformative,
           fmt("GAP tuning at p=%d: m*=%d zeroes %.0f%% of features (need %.0f%%), %d/%d informative retained "
               "(need %d), %.1fs",
               sc.p, tuned.m, 100.0 * zero_fraction, 100.0 * kGapMinZeroFraction, informative, sc.q,
               kGapMinInformative, seconds_since(t0)));
    std::string ms;
    for (const auto& r : tab1_p50.runs) ms += " " + std::to_string(r.m);
    note("m* chosen in the 20 multivariate runs at p=50:" + ms);
}

void criterion8() {
    // objective trace monotone on random problems of all three kinds
    Rng rng(0xC8);
    int trace_bad = 0;
    for (int t = 0; t < kTraceProblems; ++t) {
        KMeansConfig cfg;
        cfg.k = 2 + static_cast<int>(rng.index(3));
        cfg.seed = rng.next();
        cfg.n_init = 3;
        std::vector<double> trace;
        if (t % 3 == 0) {
            const int p = 2 + static_cast<int>(rng.index(30));
            const Eigen::MatrixXd x = oracle::random_matrix(rng, 30, p);
            trace = sparse_kmeans_mv(Dataset(x), static_cast<int>(rng.index(static_cast<std::size_t>(p))), cfg)
                        .objective_trace;
        } else if (t % 3 == 1) {
            const int p = 2 + static_cast<int>(rng.index(30));
            const Eigen::MatrixXd x = oracle::random_matrix(rng, 30, p);
            const double s = 1.0 + rng.uniform() * (std::sqrt(static_cast<double>(p)) - 1.0);
            trace = sparse_kmeans_soft(Dataset(x), s, cfg).objective_trace;
        } else {
            FdScenario s;
            s.per_class = 15;
            s.grid_size = 40;
            s.seed = rng.next();
            const FdSample sample = gen_fd(s);
            trace = sparse_kmeans_fd(sample.data, 0.05 + 0.9 * rng.uniform(), cfg).objective_trace;
        }
        for (std::size_t i = 1; i < trace.size(); ++i) {
            if (trace[i] < trace[i - 1] - objective_tolerance(trace[i - 1])) {
                ++trace_bad;
                break;
            }
        }
    }

    int bcss_bad = 0;
    double bcss_worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng.index(29));
        const int k = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(n, 5))));
        const int p = 1 + static_cast<int>(rng.index(5));
        const Eigen::MatrixXd x = oracle::random_matrix(rng, n, p);
        const auto labels = oracle::random_labels(rng, n, k);
        const Eigen::VectorXd fast = bcss_per_feature(Dataset(x), Partition(labels, k));
        const Eigen::VectorXd pairs = oracle::bcss_pairs(x, labels, k);
        for (int j = 0; j < p; ++j) {
            const double rel = std::abs(fast(j) - pairs(j)) / std::max(std::abs(pairs(j)), 1e-300);
            const bool ok = std::abs(fast(j) - pairs(j)) <= kBcssRelTol * std::max(std::abs(pairs(j)), 1e-12);
            if (!ok) ++bcss_bad;
            if (std::abs(pairs(j)) > 1e-12) bcss_worst = std::max(bcss_worst, rel);
        }
    }

    int cer_bad = 0;
    for (int t = 0; t < kCerPairs; ++t) {
        const int n = 2 + static_cast<int>(rng.index(150));
        const int ka = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(n, 8))));
        const int kb = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::min(n, 8))));
        const auto la = oracle::random_labels(rng, n, ka);
        const auto lb = oracle::random_labels(rng, n, kb);
        if (cer(Partition(la, ka), Partition(lb, kb)) != oracle::cer(la, lb)) ++cer_bad;
    }

    bool identical = true;
    {
        MvScenario sc;
        sc.seed = 99;
        const MvSample mv = gen_mv(sc);
        KMeansConfig cfg;
        cfg.k = 3;
        cfg.seed = 123;
        const MvResult a = sparse_kmeans_mv(mv.data, 25, cfg);
        const MvResult b = sparse_kmeans_mv(mv.data, 25, cfg);
        identical = identical && a.partition == b.partition && a.weights.w == b.weights.w &&
                    a.objective_trace == b.objective_trace;
        GapOptions g;
        g.B_perms = 3;
        const MvTuneResult ga = tune_m_mv(mv.data, {0, 20, 40}, cfg, g);
        const MvTuneResult gb = tune_m_mv(mv.data, {0, 20, 40}, cfg, g);
        identical = identical && ga.curve.gap == gb.curve.gap;
        const Table2Run fa = run_table2_once(Table2Options{}, 2);
        const Table2Run fb = run_table2_once(Table2Options{}, 2);
        identical = identical && fa.weights.w == fb.weights.w && fa.sparse_partition == fb.sparse_partition;
    }

    report(8, trace_bad == 0 && bcss_bad == 0 && cer_bad == 0 && identical,
           fmt("properties: %d/%d traces non-monotone; BCSS pair vs centroid form %d violations (worst rel %.1e, "
               "tol %.0e); CER vs pair loop %d/%d mismatches; reruns bit-identical: %s",
               trace_bad, kTraceProblems, bcss_bad, bcss_worst, kBcssRelTol, cer_bad, kCerPairs,
               identical ? "yes" : "no"));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    const std::vector<std::function<void()>> steps{criterion1, criterion2, criterion3, criterion4,
                                                   criterion5, criterion6, criterion7, criterion8};
    for (const auto& step : steps) {
        try {
            step();
        } catch (const std::exception& e) {
            std::printf("[FAIL] exception: %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%d criterion(s) failed, %.1fs total\n", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
