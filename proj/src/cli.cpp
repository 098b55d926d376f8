#include "sfclust/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "sfclust/csv_io.hpp"
#include "sfclust/kmeans.hpp"
#include "sfclust/metrics.hpp"
#include "sfclust/simulation.hpp"
#include "sfclust/tuning.hpp"

namespace sfclust {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string input;
    std::string out = ".";
    int k = 2;
    std::uint64_t seed = 1;
    int n_init = 10;
    int max_iter = 20;

    KMeansConfig config() const {
        KMeansConfig cfg;
        cfg.k = k;
        cfg.seed = seed;
        cfg.n_init = n_init;
        cfg.max_iter_outer = max_iter;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-i,--input", o.input, "input CSV")->required();
    cmd->add_option("-o,--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("-k,--k", o.k, "number of clusters")->capture_default_str();
    cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
    cmd->add_option("--n-init", o.n_init, "k-means restarts")->capture_default_str();
    cmd->add_option("--max-iter", o.max_iter, "outer iteration cap")->capture_default_str();
}

fs::path out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + p.string() + ": " + ec.message());
    return p;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json base_summary(const std::string& command) {
    return json{{"schema", 1}, {"command", command}};
}

template <class Result>
void add_run_fields(json& j, const Result& res) {
    j["objective_trace"] = res.objective_trace;
    j["objective"] = res.objective_trace.back();
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    j["cluster_sizes"] = res.partition.cluster_sizes();
}

std::string sd_cell(double sd, int runs, bool na) {
    if (runs <= 1 && na) return "NA";
    return format_double(sd);
}

std::string summary_csv(const std::vector<MethodSummary>& rows, bool sd_na) {
    std::ostringstream s;
    s << "method,mean_cer,sd_cer,runs\n";
    for (const auto& r : rows) {
        s << r.method << ',' << format_double(r.mean) << ',' << sd_cell(r.sd, r.runs, sd_na) << ','
          << r.runs << '\n';
    }
    return s.str();
}

// --- cluster ---------------------------------------------------------------

struct ClusterOpts {
    CommonOpts common;
    std::optional<int> m;
    std::optional<double> s;
    std::string method = "hard";
    std::string truth_col;
};

void cmd_cluster(const ClusterOpts& o) {
    const MvInput in = read_mv_csv(o.common.input, o.truth_col);
    const KMeansConfig cfg = o.common.config();
    const fs::path dir = out_dir(o.common.out);
    json j = base_summary("cluster");
    j["input"] = o.common.input;
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["method"] = o.method;
    j["n_obs"] = in.data.n_obs();
    j["n_features"] = in.data.n_features();

    Partition part{std::vector<int>{0}, 1};
    if (o.method == "hard") {
        if (!o.m) throw Error(ErrorCode::InvalidArgument, "--m is required for the hard method");
        const MvResult res = sparse_kmeans_mv(in.data, *o.m, cfg);
        write_weights(dir / "weights.csv", res.weights.w);
        add_run_fields(j, res);
        j["m"] = *o.m;
        j["zero_weights"] = res.weights.zero_count();
        j["support_shrunk"] = res.weights.support_shrunk;
        part = res.partition;
    } else if (o.method == "soft") {
        if (!o.s) throw Error(ErrorCode::InvalidArgument, "--s is required for the soft method");
        const SoftResult res = sparse_kmeans_soft(in.data, *o.s, cfg);
        write_weights(dir / "weights.csv", res.weights.w);
        add_run_fields(j, res);
        j["s"] = *o.s;
        j["delta"] = res.weights.delta;
        j["w_l1"] = res.weights.w.lpNorm<1>();
        j["w_l2"] = res.weights.w.norm();
        part = res.partition;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown method '" + o.method + "'");
    }
    write_labels(dir / "labels.csv", part);
    if (in.truth) {
        j["cer"] = cer(part, *in.truth);
        j["off_diagonal"] = matched_confusion(*in.truth, part).off_diagonal();
    }
    write_json(dir / "summary.json", j);
}

// --- fcluster --------------------------------------------------------------

struct FclusterOpts {
    CommonOpts common;
    double m = 0.5;
    std::string truth;
};

json intervals_json(const std::vector<Interval>& iv) {
    json arr = json::array();
    for (const auto& i : iv) arr.push_back({i.lo, i.hi});
    return arr;
}

void cmd_fcluster(const FclusterOpts& o) {
    const FunctionalDataset data = read_fd_csv(o.common.input);
    const KMeansConfig cfg = o.common.config();
    const fs::path dir = out_dir(o.common.out);
    const FdResult res = sparse_kmeans_fd(data, o.m, cfg);
    write_labels(dir / "labels.csv", res.partition);
    write_weight_function(dir / "weight_function.csv", data.grid(), res.weights.w);

    json j = base_summary("fcluster");
    j["input"] = o.common.input;
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["m"] = o.m;
    j["n_obs"] = data.n_obs();
    j["n_points"] = data.n_points();
    add_run_fields(j, res);
    j["level"] = res.weights.level;
    j["zero_measure"] = res.weights.zero_measure(data.quad_weights());
    j["support"] = intervals_json(support_intervals(res.weights, data.grid()));
    if (!o.truth.empty()) {
        const Partition truth = read_labels(o.truth);
        if (truth.size() != static_cast<std::size_t>(data.n_obs())) {
            throw Error(ErrorCode::LengthMismatch, "truth labels do not match the number of curves");
        }
        j["cer"] = cer(res.partition, truth);
        j["off_diagonal"] = matched_confusion(truth, res.partition).off_diagonal();
    }
    write_json(dir / "summary.json", j);
}

// --- tune ------------------------------------------------------------------

struct TuneOpts {
    CommonOpts common;
    bool functional = false;
    std::string method = "hard";
    std::string truth_col;
    std::vector<double> grid;
    GapOptions gap;
};

void write_gap_curve(const fs::path& path, const GapCurve& c, const std::string& param) {
    std::ostringstream s;
    s << param << ",gap,obs,perm_mean,perm_sd,excluded\n";
    for (std::size_t i = 0; i < c.m_grid.size(); ++i) {
        s << format_double(c.m_grid[i]) << ',' << format_double(c.gap[i]) << ','
          << format_double(c.obs_log_obj[i]) << ',' << format_double(c.perm_log_obj_mean[i]) << ','
          << format_double(c.perm_log_obj_sd[i]) << ',' << (c.excluded[i] ? 1 : 0) << '\n';
    }
    write_text(path, s.str());
}

void cmd_tune(const TuneOpts& o) {
    const KMeansConfig cfg = o.common.config();
    const fs::path dir = out_dir(o.common.out);
    json j = base_summary("tune");
    j["input"] = o.common.input;
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["B_perms"] = o.gap.B_perms;
    j["one_sd_rule"] = o.gap.one_sd_rule;

    GapCurve curve;
    std::string param = "m";
    if (o.functional) {
        const FunctionalDataset data = read_fd_csv(o.common.input);
        std::vector<double> grid = o.grid;
        if (grid.empty()) {
            for (int i = 1; i <= 9; ++i) grid.push_back(data.domain_measure() * i / 10.0);
        }
        const FdTuneResult r = tune_m_fd(data, grid, cfg, o.gap);
        j["functional"] = true;
        j["n_subdomains"] = o.gap.n_subdomains;
        j["m"] = r.m;
        curve = r.curve;
    } else {
        const MvInput in = read_mv_csv(o.common.input, o.truth_col);
        const int p = static_cast<int>(in.data.n_features());
        j["functional"] = false;
        if (o.method == "soft") {
            const std::vector<double> grid = o.grid.empty() ? default_s_grid(p, 12) : o.grid;
            const SoftTuneResult r = tune_s_mv(in.data, grid, cfg, o.gap);
            j["s"] = r.s;
            param = "s";
            curve = r.curve;
        } else if (o.method == "hard") {
            std::vector<int> grid;
            for (double g : o.grid) {
                if (g != std::floor(g)) throw Error(ErrorCode::InvalidArgument, "m must be an integer");
                grid.push_back(static_cast<int>(g));
            }
            if (grid.empty()) grid = default_m_grid(p, 25);
            const MvTuneResult r = tune_m_mv(in.data, grid, cfg, o.gap);
            j["m"] = r.m;
            j["zero_fraction"] = static_cast<double>(r.m) / p;
            curve = r.curve;
        } else {
            throw Error(ErrorCode::InvalidArgument, "unknown method '" + o.method + "'");
        }
    }
    j["gap"] = curve.gap[static_cast<std::size_t>(curve.best_index)];
    write_gap_curve(dir / "gap_curve.csv", curve, param);
    write_json(dir / "summary.json", j);
}

// --- simulate --------------------------------------------------------------

struct SimOpts {
    std::string table;
    std::string out = ".";
    int p = 50;
    int runs = -1;
    std::uint64_t seed = 1;
    int run = 5;
    std::optional<double> m;
    std::optional<double> s;
    bool tune = false;
    int perms = -1;
    bool dump = false;
    bool sd_na = false;
    int n_init = 10;
};

void simulate_tab1(const SimOpts& o, const fs::path& dir) {
    Table1Options opts;
    opts.p = o.p;
    opts.seed = o.seed;
    opts.cfg.n_init = o.n_init;
    if (o.runs > 0) opts.runs = o.runs;
    if (o.perms > 0) opts.gap.B_perms = o.perms;
    if (o.m) opts.m = static_cast<int>(*o.m);
    if (o.s) opts.s = *o.s;
    const Table1Report rep = run_table1(opts);
    write_text(dir / "tab1_summary.csv", summary_csv(rep.summary, o.sd_na));

    std::ostringstream runs;
    runs << "run,cer_std,cer_soft,cer_hard,m,s,data_seed\n";
    for (const auto& r : rep.runs) {
        runs << r.run + 1 << ',' << format_double(r.cer_std) << ',' << format_double(r.cer_soft) << ','
             << format_double(r.cer_hard) << ',' << r.m << ',' << format_double(r.s) << ','
             << run_data_seed(o.seed, r.run) << '\n';
        if (o.dump) {
            MvScenario sc;
            sc.p = opts.p;
            sc.q = opts.q;
            sc.seed = run_data_seed(o.seed, r.run);
            const MvSample sample = gen_mv(sc);
            write_mv_csv(dir / ("tab1_data_run" + std::to_string(r.run + 1) + ".csv"), sample.data,
                         &sample.truth);
        }
    }
    write_text(dir / "tab1_runs.csv", runs.str());
    std::cout << "p = " << o.p << ", runs = " << opts.runs << "\n" << summary_csv(rep.summary, o.sd_na);
}

Table2Options tab2_options(const SimOpts& o) {
    Table2Options opts;
    opts.seed = o.seed;
    opts.cfg.n_init = o.n_init;
    if (o.runs > 0) opts.runs = o.runs;
    if (o.perms > 0) opts.gap.B_perms = o.perms;
    if (o.tune) opts.m.reset();
    if (o.m) opts.m = *o.m;
    return opts;
}

void dump_fd(const fs::path& dir, const Table2Options& opts, int run) {
    FdScenario sc;
    sc.grid_size = opts.grid_size;
    sc.seed = run_data_seed(opts.seed, run);
    const FdSample sample = gen_fd(sc);
    const std::string tag = std::to_string(run + 1);
    write_fd_csv(dir / ("tab2_data_run" + tag + ".csv"), sample.data);
    write_labels(dir / ("tab2_truth_run" + tag + ".csv"), sample.truth);
}

void simulate_tab2(const SimOpts& o, const fs::path& dir) {
    const Table2Options opts = tab2_options(o);
    const Table2Report rep = run_table2(opts);
    write_text(dir / "tab2_summary.csv", summary_csv(rep.summary, o.sd_na));

    std::ostringstream runs;
    runs << "run,cer_std,cer_sparse,m,support_lo,support_hi,n_intervals,spearman,iterations,converged\n";
    for (const auto& r : rep.runs) {
        const double lo = r.support.empty() ? NAN : r.support.front().lo;
        const double hi = r.support.empty() ? NAN : r.support.back().hi;
        runs << r.run + 1 << ',' << format_double(r.cer_std) << ',' << format_double(r.cer_sparse) << ','
             << format_double(r.m) << ',' << format_double(lo) << ',' << format_double(hi) << ','
             << r.support.size() << ',' << format_double(r.support_spearman) << ',' << r.iterations
             << ',' << (r.converged ? 1 : 0) << '\n';
        write_weight_function(dir / ("tab2_weight_function_run" + std::to_string(r.run + 1) + ".csv"),
                              r.grid, r.weights.w);
        if (o.dump) dump_fd(dir, opts, r.run);
    }
    write_text(dir / "tab2_runs.csv", runs.str());
    std::cout << "runs = " << opts.runs << "\n" << summary_csv(rep.summary, o.sd_na);
}

std::string confusion_csv(const ConfusionMatrix& c) {
    std::ostringstream s;
    s << "truth";
    for (int l : c.col_labels) s << ",cluster_" << l + 1;
    s << '\n';
    for (std::size_t r = 0; r < c.row_labels.size(); ++r) {
        s << c.row_labels[r] + 1;
        for (std::size_t q = 0; q < c.col_labels.size(); ++q) s << ',' << c.counts[r][q];
        s << '\n';
    }
    return s.str();
}

void simulate_tab3(const SimOpts& o, const fs::path& dir) {
    const Table2Options opts = tab2_options(o);
    if (o.run < 1) throw Error(ErrorCode::InvalidArgument, "--run is 1-based");
    const Table2Run r = run_table2_once(opts, o.run - 1);
    const ConfusionMatrix std_cm = matched_confusion(r.truth, r.std_partition);
    const ConfusionMatrix sparse_cm = matched_confusion(r.truth, r.sparse_partition);
    write_text(dir / "tab3_confusion_sparse.csv", confusion_csv(sparse_cm));
    write_text(dir / "tab3_confusion_std.csv", confusion_csv(std_cm));
    write_weight_function(dir / "tab3_weight_function.csv", r.grid, r.weights.w);
    if (o.dump) dump_fd(dir, opts, r.run);

    json j = base_summary("simulate tab3");
    j["seed"] = o.seed;
    j["run"] = o.run;
    j["m"] = r.m;
    j["cer_std"] = r.cer_std;
    j["cer_sparse"] = r.cer_sparse;
    j["off_diagonal_std"] = std_cm.off_diagonal();
    j["off_diagonal_sparse"] = sparse_cm.off_diagonal();
    j["support"] = intervals_json(r.support);
    write_json(dir / "tab3_summary.json", j);
    std::cout << "sparse confusion (rows = truth)\n" << confusion_csv(sparse_cm)
              << "off-diagonal: " << sparse_cm.off_diagonal() << "\n";
}

void cmd_simulate(const SimOpts& o) {
    const fs::path dir = out_dir(o.out);
    if (o.table == "tab1") {
        simulate_tab1(o, dir);
    } else if (o.table == "tab2") {
        simulate_tab2(o, dir);
    } else {
        simulate_tab3(o, dir);
    }
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Sparse clustering of multivariate and functional data"};
    app.require_subcommand(1);

    ClusterOpts cl;
    auto* cluster = app.add_subcommand("cluster", "sparse k-means on a multivariate CSV");
    add_common(cluster, cl.common);
    cluster->add_option("--m", cl.m, "number of zero weights (hard method)");
    cluster->add_option("--s", cl.s, "l1 budget (soft method)");
    cluster->add_option("--method", cl.method, "hard or soft")
        ->check(CLI::IsMember({"hard", "soft"}))
        ->capture_default_str();
    cluster->add_option("--truth-col", cl.truth_col, "label column (name or 1-based index)");

    FclusterOpts fc;
    auto* fcluster = app.add_subcommand("fcluster", "sparse functional k-means on a curve CSV");
    add_common(fcluster, fc.common);
    fcluster->add_option("--m", fc.m, "measure of the zero set of w")->capture_default_str();
    fcluster->add_option("--truth", fc.truth, "file with one truth label per curve");

    TuneOpts tu;
    auto* tune = app.add_subcommand("tune", "choose the sparsity parameter by the GAP statistic");
    add_common(tune, tu.common);
    tune->add_flag("--functional", tu.functional, "input is a functional CSV");
    tune->add_option("--method", tu.method, "hard or soft (multivariate only)")
        ->check(CLI::IsMember({"hard", "soft"}))
        ->capture_default_str();
    tune->add_option("--truth-col", tu.truth_col, "label column to drop (name or 1-based index)");
    tune->add_option("--m-grid", tu.grid, "candidate values")->delimiter(',');
    tune->add_option("--perms", tu.gap.B_perms, "permuted copies")->capture_default_str();
    tune->add_option("--subdomains", tu.gap.n_subdomains, "blocks for functional permutation")
        ->capture_default_str();
    tune->add_flag("--one-sd", tu.gap.one_sd_rule, "least sparse candidate within one sd");

    SimOpts si;
    auto* sim = app.add_subcommand("simulate", "seeded simulation studies");
    sim->add_option("table", si.table, "tab1, tab2 or tab3")
        ->required()
        ->check(CLI::IsMember({"tab1", "tab2", "tab3"}));
    sim->add_option("-o,--out", si.out, "output directory")->capture_default_str();
    sim->add_option("--p", si.p, "dimension (tab1)")->capture_default_str();
    sim->add_option("--runs", si.runs, "repetitions (default 20 for tab1, 10 for tab2)");
    sim->add_option("--seed", si.seed, "master seed")->capture_default_str();
    sim->add_option("--run", si.run, "1-based run reported by tab3")->capture_default_str();
    sim->add_option("--m", si.m, "fixed sparsity (default: GAP for tab1, 0.5 for tab2)");
    sim->add_option("--s", si.s, "fixed l1 budget for the soft baseline (tab1)");
    sim->add_flag("--tune", si.tune, "choose m by GAP in tab2/tab3");
    sim->add_option("--perms", si.perms, "permuted copies for GAP tuning");
    sim->add_option("--n-init", si.n_init, "k-means restarts")->capture_default_str();
    sim->add_flag("--dump-data", si.dump, "also write the generated datasets");
    sim->add_flag("--sd-na", si.sd_na, "report sd as NA for a single run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cluster) cmd_cluster(cl);
        if (*fcluster) cmd_fcluster(fc);
        if (*tune) cmd_tune(tu);
        if (*sim) cmd_simulate(si);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_numerical(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace sfclust
