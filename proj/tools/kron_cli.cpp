// kron: generate, fit, analyze, and compare Kronecker graphs.
//
// Subcommands: generate | fit | stats | compare | select.
// Every run writes a flat key=value manifest next to its outputs so any
// artifact can be reproduced from the recorded seed and parameters.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "kron/diagnostics.hpp"
#include "kron/errors.hpp"
#include "kron/fit.hpp"
#include "kron/kron.hpp"
#include "kron/stats.hpp"

namespace {

constexpr const char* kVersion = "kron 0.1.0";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Manifest {
public:
    explicit Manifest(std::string subcommand) { set("subcommand", std::move(subcommand)); }

    template <typename T>
    void set(const std::string& key, const T& value) {
        std::ostringstream os;
        os << std::setprecision(17) << value;
        entries_[key] = os.str();
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw kron::IoError("cannot write manifest: " + path);
        out << "version=" << kVersion << "\n";
        for (const auto& [k, v] : entries_) out << k << "=" << v << "\n";
    }

private:
    std::map<std::string, std::string> entries_;
};

kron::InitiatorMatrix resolve_initiator(const std::string& file, const std::string& inline_text) {
    if (!inline_text.empty()) return kron::parse_initiator_inline(inline_text);
    if (!file.empty()) return kron::load_initiator(file);
    throw CLI::ValidationError("--initiator or --inline is required");
}

std::string scalar_or_undefined(const std::optional<double>& v) {
    if (!v) return "undefined";
    std::ostringstream os;
    os << std::setprecision(17) << *v;
    return os.str();
}

void write_series_set(const kron::StatReport& rep, const std::string& dir,
                      const std::string& suffix = "") {
    std::filesystem::create_directories(dir);
    for (const auto& s : rep.series)
        kron::write_series_csv(s, dir + "/" + kron::series_kind_name(s.kind) + suffix + ".csv");
}

void write_scalar_summary(const kron::StatReport& rep, std::ostream& out) {
    const auto& s = rep.scalars;
    out << "n=" << s.n << "\n"
        << "e=" << s.e << "\n"
        << "n_c=" << s.n_c << "\n"
        << "frac_largest_wcc=" << s.frac_largest_wcc << "\n"
        << "avg_clustering=" << s.avg_clustering << "\n"
        << "effective_diameter=" << scalar_or_undefined(s.effective_diameter) << "\n"
        << "diameter="
        << (s.int_diameter ? std::to_string(*s.int_diameter) : std::string("undefined")) << "\n"
        << "avg_path_length=" << scalar_or_undefined(s.avg_path_length) << "\n";
}

int cmd_generate(const std::string& initiator_file, const std::string& inline_text, int k,
                 const std::string& mode, uint64_t seed, const std::string& out) {
    const auto t0 = Clock::now();
    const kron::InitiatorMatrix initiator = resolve_initiator(initiator_file, inline_text);
    if (mode == "deterministic" && !initiator.is_binary())
        throw CLI::ValidationError("deterministic mode requires a 0/1 initiator");
    const kron::KroneckerPowerSpec spec(initiator, k);
    kron::SparseGraph g;
    if (mode == "deterministic")
        g = kron::generate_deterministic(spec);
    else if (mode == "naive")
        g = kron::realize_naive(spec, seed);
    else if (mode == "fast")
        g = kron::generate_fast(spec, seed);
    else
        throw CLI::ValidationError("unknown mode: " + mode);
    kron::save_edge_list(g, out);

    Manifest m("generate");
    m.set("mode", mode);
    m.set("k", k);
    m.set("n1", initiator.n1());
    m.set("seed", seed);
    m.set("out", out);
    m.set("n", g.num_nodes());
    m.set("e", g.num_edges());
    m.set("wall_seconds", seconds_since(t0));
    m.write(out + ".manifest");
    std::cout << "n=" << g.num_nodes() << " e=" << g.num_edges() << " seconds="
              << seconds_since(t0) << "\n";
    return 0;
}

kron::FitConfig apply_fit_flags(kron::FitConfig cfg, int n1, int iterations, int64_t samples,
                                int64_t burn_in, double omega, int taylor, uint64_t seed) {
    cfg.n1 = n1;
    cfg.iterations = iterations;
    cfg.samples_per_step = samples;
    cfg.burn_in = burn_in;
    cfg.omega = omega;
    cfg.taylor_order = taylor;
    cfg.seed = seed;
    return cfg;
}

void write_fit_trace(const kron::FitResult& res, int n1, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw kron::IoError("cannot write trace: " + path);
    out << std::setprecision(17) << "step,loglik";
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) out << ",theta_" << i << j;
    out << "\n";
    for (size_t s = 0; s < res.trace.size(); ++s) {
        out << s << "," << res.trace[s].loglik;
        for (double v : res.trace[s].theta.entries()) out << "," << v;
        out << "\n";
    }
}

void write_diag_csvs(const kron::ChainDiagnostics& diag, const std::string& prefix) {
    {
        std::ofstream out(prefix + ".autocorr.csv");
        out << std::setprecision(17) << "lag,autocorrelation\n";
        for (const auto& [lag, r] : diag.autocorrelation) out << lag << "," << r << "\n";
    }
    {
        std::ofstream out(prefix + ".psr.csv");
        out << std::setprecision(17) << "length,psr\n";
        for (const auto& [len, r] : diag.potential_scale_reduction) out << len << "," << r << "\n";
    }
}

int cmd_fit(const std::string& graph_path, bool undirected, const kron::FitConfig& cfg,
            int diag_chains, int64_t diag_samples, const std::string& out_prefix) {
    const auto t0 = Clock::now();
    const kron::SparseGraph g = kron::load_edge_list(graph_path, !undirected);
    kron::FitResult res;
    int exit_code = 0;
    try {
        res = kron::fit(g, cfg);
    } catch (const kron::FitError& ex) {
        std::cerr << "fit failed: " << ex.what() << "\n";
        exit_code = 1;
    }
    write_fit_trace(res, cfg.n1, out_prefix + ".trace.csv");
    if (exit_code != 0) return exit_code;
    kron::save_initiator(res.theta_hat, out_prefix + ".theta");

    // Diagnostics: fresh short chains at the fitted parameters.
    std::vector<std::vector<double>> traces;
    if (!res.final_loglik_trace.empty()) traces.push_back(res.final_loglik_trace);
    const kron::PaddedGraph padded = kron::pad_to_power(g, cfg.n1);
    for (int c = static_cast<int>(traces.size()); c < diag_chains; ++c) {
        std::mt19937_64 rng(cfg.seed + 1000 + c);
        kron::MetropolisChain chain(padded.graph, res.theta_hat, padded.k, cfg.omega,
                                    cfg.taylor_order, rng(),
                                    kron::NodePermutation::random(padded.graph.num_nodes(), rng));
        std::vector<double> trace;
        trace.reserve(diag_samples);
        for (int64_t t = 0; t < diag_samples; ++t) {
            chain.step();
            trace.push_back(chain.loglik());
        }
        traces.push_back(std::move(trace));
    }
    // Equalize lengths for the scale-reduction computation.
    size_t min_len = traces[0].size();
    for (auto& t : traces) min_len = std::min(min_len, t.size());
    for (auto& t : traces) t.resize(min_len);
    const auto diag = kron::chain_diagnostics(traces);
    write_diag_csvs(diag, out_prefix);

    Manifest m("fit");
    m.set("graph", graph_path);
    m.set("n1", cfg.n1);
    m.set("iterations", cfg.iterations);
    m.set("samples_per_step", cfg.samples_per_step);
    m.set("burn_in", cfg.burn_in);
    m.set("omega", cfg.omega);
    m.set("taylor_order", cfg.taylor_order);
    m.set("seed", cfg.seed);
    m.set("undirected", undirected ? 1 : 0);
    m.set("out_prefix", out_prefix);
    m.set("loglik", res.loglik);
    m.set("bic", res.bic);
    m.set("k", res.k);
    m.set("padded_n", res.padded_n);
    m.set("acceptance_fraction", res.acceptance_fraction);
    m.set("wall_seconds", seconds_since(t0));
    m.write(out_prefix + ".manifest");
    std::cout << std::setprecision(12) << "loglik=" << res.loglik << " bic=" << res.bic
              << " seconds=" << seconds_since(t0) << "\n";
    for (int i = 0; i < cfg.n1; ++i) {
        for (int j = 0; j < cfg.n1; ++j) std::cout << (j ? " " : "") << res.theta_hat.at(i, j);
        std::cout << "\n";
    }
    return 0;
}

int cmd_stats(const std::string& graph_path, bool undirected, const std::string& out_dir,
              int top_singular, uint64_t seed) {
    const auto t0 = Clock::now();
    const kron::SparseGraph g = kron::load_edge_list(graph_path, !undirected);
    kron::ReportOptions opts;
    opts.top_singular = top_singular;
    opts.hop.seed = seed;
    const kron::StatReport rep = kron::compute_report(g, opts);
    write_series_set(rep, out_dir);
    {
        std::ofstream out(out_dir + "/summary.txt");
        if (!out) throw kron::IoError("cannot write summary");
        write_scalar_summary(rep, out);
    }
    write_scalar_summary(rep, std::cout);

    Manifest m("stats");
    m.set("graph", graph_path);
    m.set("out_dir", out_dir);
    m.set("seed", seed);
    m.set("top_singular", top_singular);
    m.set("undirected", undirected ? 1 : 0);
    m.set("wall_seconds", seconds_since(t0));
    m.write(out_dir + "/manifest");
    return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, bool undirected,
                const std::string& out_dir, uint64_t seed) {
    const auto t0 = Clock::now();
    const kron::SparseGraph ga = kron::load_edge_list(path_a, !undirected);
    const kron::SparseGraph gb = kron::load_edge_list(path_b, !undirected);
    kron::ReportOptions opts;
    opts.hop.seed = seed;
    const kron::StatReport ra = kron::compute_report(ga, opts);
    const kron::StatReport rb = kron::compute_report(gb, opts);
    const kron::ReportDivergence div = kron::compare_reports(ra, rb);

    std::filesystem::create_directories(out_dir);
    // Overlay CSVs: x, y_a, y_b on the union of x values.
    for (const auto& sa : ra.series) {
        const auto* sb = rb.find(sa.kind);
        std::map<double, std::pair<double, double>> merged;
        for (const auto& [x, y] : sa.points) merged[x].first = y;
        for (const auto& [x, y] : sb->points) merged[x].second = y;
        std::ofstream out(out_dir + "/" + kron::series_kind_name(sa.kind) + ".overlay.csv");
        out << std::setprecision(17) << "x,y_a,y_b\n";
        for (const auto& [x, ys] : merged) out << x << "," << ys.first << "," << ys.second << "\n";
    }
    {
        std::ofstream out(out_dir + "/divergence.csv");
        out << std::setprecision(17) << "statistic,divergence\n";
        for (const auto& [name, v] : div.series_l1) out << name << "," << v << "\n";
        for (const auto& [name, v] : div.scalar_abs) out << name << "," << v << "\n";
    }
    for (const auto& [name, v] : div.series_l1) std::cout << name << " L1=" << v << "\n";
    for (const auto& [name, v] : div.scalar_abs) std::cout << name << " |diff|=" << v << "\n";

    Manifest m("compare");
    m.set("graph_a", path_a);
    m.set("graph_b", path_b);
    m.set("out_dir", out_dir);
    m.set("seed", seed);
    m.set("undirected", undirected ? 1 : 0);
    m.set("wall_seconds", seconds_since(t0));
    m.write(out_dir + "/manifest");
    return 0;
}

int cmd_select(const std::string& graph_path, bool undirected, std::vector<int> sizes,
               const kron::FitConfig& cfg, const std::string& out_prefix) {
    const auto t0 = Clock::now();
    for (int s : sizes)
        if (s < 2 || s > 9) throw CLI::ValidationError("sizes must lie in {2..9}");
    const kron::SparseGraph g = kron::load_edge_list(graph_path, !undirected);
    const kron::SelectionTable table = kron::select_initiator_size(g, sizes, cfg);

    std::ofstream out(out_prefix + ".select.csv");
    out << std::setprecision(17) << "n1,loglik,bic,padded_n,nonisolated,best,error\n";
    std::cout << "n1\tloglik\tbic\tpadded_n\tnonisolated\n";
    for (const auto& row : table.rows) {
        if (row.ok) {
            out << row.n1 << "," << row.loglik << "," << row.bic << "," << row.padded_n << ","
                << row.nonisolated << "," << (row.n1 == table.best_n1 ? 1 : 0) << ",\n";
            std::cout << std::setprecision(12) << row.n1 << "\t" << row.loglik << "\t" << row.bic
                      << "\t" << row.padded_n << "\t" << row.nonisolated
                      << (row.n1 == table.best_n1 ? "\t<-- best (argmin BIC)" : "") << "\n";
        } else {
            out << row.n1 << ",,,,,0," << row.error << "\n";
            std::cout << row.n1 << "\tfailed: " << row.error << "\n";
        }
    }

    Manifest m("select");
    m.set("graph", graph_path);
    m.set("seed", cfg.seed);
    m.set("best_n1", table.best_n1);
    m.set("undirected", undirected ? 1 : 0);
    m.set("out_prefix", out_prefix);
    m.set("wall_seconds", seconds_since(t0));
    m.write(out_prefix + ".select.manifest");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker graph generation, fitting, and network statistics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.fallthrough();  // lets --seed/--threads appear after the subcommand

    uint64_t seed = 0;
    int threads = 1;
    app.add_option("--seed", seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads (recorded; library is sequential)");

    // generate
    auto* gen = app.add_subcommand("generate", "generate a Kronecker graph edge list");
    std::string gen_initiator, gen_inline, gen_mode = "fast", gen_out = "graph.txt";
    int gen_k = 1;
    gen->add_option("--initiator", gen_initiator, "initiator file");
    gen->add_option("--inline", gen_inline, "inline initiator, rows separated by ';'");
    gen->add_option("--k", gen_k, "Kronecker power")->required();
    gen->add_option("--mode", gen_mode, "deterministic|naive|fast")->capture_default_str();
    gen->add_option("--out", gen_out, "output edge list path")->capture_default_str();

    // shared fit flags
    std::string graph_path, out_prefix = "fit";
    bool undirected = false;
    int n1 = 2, iterations = 100, taylor = 2;
    int64_t samples = 500000, burn_in = 10000;
    double omega = 0.6;
    auto add_fit_flags = [&](CLI::App* cmd) {
        cmd->add_option("graph", graph_path, "input edge list")->required();
        cmd->add_flag("--undirected", undirected, "treat input edges as undirected");
        cmd->add_option("--iterations", iterations, "gradient steps")->capture_default_str();
        cmd->add_option("--samples", samples, "permutation samples per step")->capture_default_str();
        cmd->add_option("--burnin", burn_in, "burn-in samples")->capture_default_str();
        cmd->add_option("--omega", omega, "SwapNodes proposal probability")->capture_default_str();
        cmd->add_option("--taylor", taylor, "Taylor order for the empty-graph term (2..5)")
            ->capture_default_str();
        cmd->add_option("--out", out_prefix, "output path prefix")->capture_default_str();
    };

    auto* fit_cmd = app.add_subcommand("fit", "fit an initiator matrix by maximum likelihood");
    int diag_chains = 2;
    int64_t diag_samples = 20000;
    add_fit_flags(fit_cmd);
    fit_cmd->add_option("--n1", n1, "initiator size")->capture_default_str();
    fit_cmd->add_option("--diag-chains", diag_chains, "chains for scale-reduction diagnostics")
        ->capture_default_str();
    fit_cmd->add_option("--diag-samples", diag_samples, "samples per diagnostics chain")
        ->capture_default_str();

    auto* stats_cmd = app.add_subcommand("stats", "compute network statistics");
    std::string stats_out = "netstats";
    int top_singular = 20;
    stats_cmd->add_option("graph", graph_path, "input edge list")->required();
    stats_cmd->add_flag("--undirected", undirected, "treat input edges as undirected");
    stats_cmd->add_option("--out", stats_out, "output directory")->capture_default_str();
    stats_cmd->add_option("--top-singular", top_singular, "singular values to compute")
        ->capture_default_str();

    auto* cmp = app.add_subcommand("compare", "compare statistics of two graphs");
    std::string path_a, path_b, cmp_out = "compare-out";
    cmp->add_option("graph_a", path_a)->required();
    cmp->add_option("graph_b", path_b)->required();
    cmp->add_flag("--undirected", undirected, "treat input edges as undirected");
    cmp->add_option("--out", cmp_out, "output directory")->capture_default_str();

    auto* sel = app.add_subcommand("select", "choose the initiator size by BIC");
    std::vector<int> sizes{2, 3, 4};
    add_fit_flags(sel);
    sel->add_option("--sizes", sizes, "candidate initiator sizes")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_generate(gen_initiator, gen_inline, gen_k, gen_mode, seed, gen_out);
        kron::FitConfig cfg = apply_fit_flags({}, n1, iterations, samples, burn_in, omega, taylor,
                                              seed);
        if (*fit_cmd) return cmd_fit(graph_path, undirected, cfg, diag_chains, diag_samples,
                                     out_prefix);
        if (*stats_cmd) return cmd_stats(graph_path, undirected, stats_out, top_singular, seed);
        if (*cmp) return cmd_compare(path_a, path_b, undirected, cmp_out, seed);
        if (*sel) return cmd_select(graph_path, undirected, sizes, cfg, out_prefix);
    } catch (const CLI::ValidationError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const kron::DomainError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 2;
}
