#include "kron/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "kron/errors.hpp"

namespace kron {

std::string series_kind_name(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::DegreeIn: return "degree-in";
        case SeriesKind::DegreeOut: return "degree-out";
        case SeriesKind::Scree: return "scree";
        case SeriesKind::NetworkValue: return "network-value";
        case SeriesKind::TriangleParticipation: return "triangle-participation";
        case SeriesKind::HopPlot: return "hop-plot";
    }
    return "unknown";
}

DistributionSeries exponential_bin(const DistributionSeries& s, double ratio) {
    if (ratio <= 1.0) throw DomainError("exponential binning ratio must exceed 1");
    DistributionSeries out;
    out.kind = s.kind;
    out.binning = Binning::Exponential;
    if (s.points.empty()) return out;
    double lo = std::max(1.0, s.points.front().first);
    size_t i = 0;
    // x <= 0 points pass through unbinned.
    while (i < s.points.size() && s.points[i].first < lo) {
        out.points.push_back(s.points[i]);
        ++i;
    }
    while (i < s.points.size()) {
        double hi = std::max(lo * ratio, lo + 1.0);
        double y = 0.0;
        bool any = false;
        while (i < s.points.size() && s.points[i].first < hi) {
            y += s.points[i].second;
            any = true;
            ++i;
        }
        if (any) out.points.emplace_back(std::sqrt(lo * hi), y);
        lo = hi;
    }
    return out;
}

DistributionSeries degree_distribution(const SparseGraph& g, DegreeDirection direction) {
    std::map<int64_t, double> counts;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        int64_t d = direction == DegreeDirection::Out ? g.out_degree(u) : g.in_degree(u);
        counts[d] += 1.0;
    }
    DistributionSeries out;
    out.kind = direction == DegreeDirection::Out ? SeriesKind::DegreeOut : SeriesKind::DegreeIn;
    for (const auto& [d, c] : counts) out.points.emplace_back(static_cast<double>(d), c);
    return out;
}

namespace {

// One pass of BFS sweeps shared by hop plot, diameters, and path stats.
struct HopAggregate {
    std::vector<double> cum_pairs;  // index h: pairs within h hops (scaled if sampled)
    double total_pairs = 0.0;       // reachable pairs incl. self-pairs
    double pairs_excl_self = 0.0;
    double dist_sum = 0.0;          // over reachable ordered pairs u != v
    int64_t max_dist = 0;
};

HopAggregate bfs_sweep(const SparseGraph& g, const HopPlotOptions& opts) {
    const NodeId n = g.num_nodes();
    HopAggregate agg;
    if (n == 0) return agg;

    std::vector<NodeId> sources;
    double scale = 1.0;
    if (opts.sample_sources > 0 && opts.sample_sources < n) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<NodeId> pick(0, n - 1);
        sources.resize(opts.sample_sources);
        for (auto& s : sources) s = pick(rng);
        scale = static_cast<double>(n) / static_cast<double>(sources.size());
    } else if (opts.sample_sources == 0 && n > opts.exact_cap) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<NodeId> pick(0, n - 1);
        sources.resize(opts.exact_cap);
        for (auto& s : sources) s = pick(rng);
        scale = static_cast<double>(n) / static_cast<double>(sources.size());
    } else {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), NodeId(0));
    }

    std::vector<double> hist;  // new pairs per hop
    for (NodeId s : sources) {
        const auto dist = bfs_distances(g, s, /*treat_undirected=*/false);
        for (NodeId v = 0; v < n; ++v) {
            if (dist[v] == SparseGraph::kUnreachable) continue;
            const int64_t d = dist[v];
            if (static_cast<size_t>(d) >= hist.size()) hist.resize(d + 1, 0.0);
            hist[d] += 1.0;
            if (v != s) agg.dist_sum += d;
            agg.max_dist = std::max(agg.max_dist, d);
        }
    }
    double cum = 0.0;
    agg.cum_pairs.reserve(hist.size());
    for (double h : hist) {
        cum += h * scale;
        agg.cum_pairs.push_back(cum);
    }
    agg.total_pairs = cum;
    agg.pairs_excl_self = cum - (agg.cum_pairs.empty() ? 0.0 : agg.cum_pairs[0]);
    agg.dist_sum *= scale;
    return agg;
}

}  // namespace

DistributionSeries hop_plot(const SparseGraph& g, const HopPlotOptions& opts) {
    const HopAggregate agg = bfs_sweep(g, opts);
    DistributionSeries out;
    out.kind = SeriesKind::HopPlot;
    for (size_t h = 0; h < agg.cum_pairs.size(); ++h)
        out.points.emplace_back(static_cast<double>(h), agg.cum_pairs[h]);
    return out;
}

double effective_diameter_from_hop_plot(const DistributionSeries& plot) {
    if (plot.points.empty() || plot.points.back().second <= 0.0)
        throw UndefinedStatError("effective diameter undefined: no reachable pairs");
    const double total = plot.points.back().second;
    double prev_x = plot.points.front().first;
    double prev_f = plot.points.front().second / total;
    if (prev_f >= 0.9) return prev_x;
    for (size_t i = 1; i < plot.points.size(); ++i) {
        const double x = plot.points[i].first;
        const double f = plot.points[i].second / total;
        if (f >= 0.9)
            return prev_x + (x - prev_x) * (0.9 - prev_f) / (f - prev_f);
        prev_x = x;
        prev_f = f;
    }
    return plot.points.back().first;  // unreachable: f ends at 1.0
}

double effective_diameter(const SparseGraph& g, const HopPlotOptions& opts) {
    return effective_diameter_from_hop_plot(hop_plot(g, opts));
}

int64_t integer_diameter(const SparseGraph& g) {
    return bfs_sweep(g, HopPlotOptions{}).max_dist;
}

namespace {

// Undirected simple view: merged in/out neighbors, self-loops dropped.
std::vector<std::vector<NodeId>> undirected_view(const SparseGraph& g) {
    std::vector<std::vector<NodeId>> adj(g.num_nodes());
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        auto& a = adj[u];
        for (NodeId v : g.out_neighbors(u))
            if (v != u) a.push_back(v);
        for (NodeId v : g.in_neighbors(u))
            if (v != u) a.push_back(v);
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

std::vector<int64_t> triangle_counts(const std::vector<std::vector<NodeId>>& adj) {
    std::vector<int64_t> tri(adj.size(), 0);
    auto linked = [&](NodeId a, NodeId b) {
        return std::binary_search(adj[a].begin(), adj[a].end(), b);
    };
    for (NodeId w = 0; w < static_cast<NodeId>(adj.size()); ++w) {
        const auto& nb = adj[w];
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (linked(nb[i], nb[j])) ++tri[w];
    }
    return tri;
}

}  // namespace

DistributionSeries triangle_participation(const SparseGraph& g) {
    const auto adj = undirected_view(g);
    const auto tri = triangle_counts(adj);
    std::map<int64_t, double> counts;
    for (int64_t t : tri) counts[t] += 1.0;
    DistributionSeries out;
    out.kind = SeriesKind::TriangleParticipation;
    for (const auto& [t, c] : counts) out.points.emplace_back(static_cast<double>(t), c);
    return out;
}

ClusteringPathStats clustering_and_path_stats(const SparseGraph& g, const HopPlotOptions& opts) {
    ClusteringPathStats out;
    const auto adj = undirected_view(g);
    const auto tri = triangle_counts(adj);
    double csum = 0.0;
    int64_t eligible = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        const int64_t d = static_cast<int64_t>(adj[u].size());
        if (d < 2) continue;
        ++eligible;
        csum += 2.0 * static_cast<double>(tri[u]) / (static_cast<double>(d) * (d - 1));
    }
    out.avg_clustering = eligible ? csum / eligible : 0.0;
    const HopAggregate agg = bfs_sweep(g, opts);
    if (agg.pairs_excl_self > 0.0) out.avg_path_length = agg.dist_sum / agg.pairs_excl_self;
    return out;
}

double densification_exponent(const std::vector<std::pair<int64_t, int64_t>>& snapshots) {
    if (snapshots.size() < 2) throw DomainError("densification fit needs >= 2 snapshots");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, e] : snapshots) {
        if (n < 2 || e < 1) throw DomainError("snapshots need n >= 2 and e >= 1");
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(static_cast<double>(e));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double m = static_cast<double>(snapshots.size());
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * m * sxx || denom == 0.0)
        throw UndefinedStatError("densification exponent undefined: all snapshots have equal n");
    return (m * sxy - sx * sy) / denom;
}

namespace {

// y := A x (out-adjacency as the matrix rows).
void mat_vec(const SparseGraph& g, const std::vector<double>& x, std::vector<double>& y) {
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        double s = 0.0;
        for (NodeId v : g.out_neighbors(u)) s += x[v];
        y[u] = s;
    }
}

void mat_t_vec(const SparseGraph& g, const std::vector<double>& x, std::vector<double>& y) {
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        double s = 0.0;
        for (NodeId v : g.in_neighbors(u)) s += x[v];
        y[u] = s;
    }
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

ScreeResult scree_and_network_values(const SparseGraph& g, int top_s, const ScreeOptions& opts) {
    const NodeId n = g.num_nodes();
    if (top_s < 1 || top_s > n) throw DomainError("top_s must be in [1, n]");
    ScreeResult res;
    res.scree.kind = SeriesKind::Scree;
    res.network_value.kind = SeriesKind::NetworkValue;

    // Orthogonal iteration on A^T A with a deterministic gaussian start.
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> V(top_s, std::vector<double>(n));
    for (auto& v : V)
        for (auto& x : v) x = gauss(rng);

    auto orthonormalize = [&](std::vector<std::vector<double>>& basis) {
        for (size_t i = 0; i < basis.size(); ++i) {
            for (size_t j = 0; j < i; ++j) {
                double dot = 0.0;
                for (NodeId t = 0; t < n; ++t) dot += basis[i][t] * basis[j][t];
                for (NodeId t = 0; t < n; ++t) basis[i][t] -= dot * basis[j][t];
            }
            const double nm = norm(basis[i]);
            if (nm > 1e-300)
                for (auto& x : basis[i]) x /= nm;
            else
                for (auto& x : basis[i]) x = 0.0;
        }
    };
    orthonormalize(V);

    std::vector<double> sigma(top_s, 0.0), prev_sigma(top_s, 0.0);
    std::vector<double> tmp(n), tmp2(n);
    res.converged = false;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        for (int i = 0; i < top_s; ++i) {
            mat_vec(g, V[i], tmp);
            sigma[i] = norm(tmp);
            mat_t_vec(g, tmp, tmp2);
            V[i] = tmp2;
        }
        orthonormalize(V);
        double worst = 0.0;
        for (int i = 0; i < top_s; ++i) {
            const double denom = std::max(std::abs(sigma[i]), 1e-30);
            worst = std::max(worst, std::abs(sigma[i] - prev_sigma[i]) / denom);
        }
        prev_sigma = sigma;
        if (iter > 0 && worst < opts.rel_tolerance) {
            res.converged = true;
            break;
        }
    }

    std::vector<int> order(top_s);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sigma[a] > sigma[b]; });
    for (int r = 0; r < top_s; ++r)
        res.scree.points.emplace_back(r + 1.0, sigma[order[r]]);

    // Leading left singular vector u = A v1 / sigma1.
    std::vector<double> u(n, 0.0);
    mat_vec(g, V[order[0]], u);
    const double un = norm(u);
    if (un > 1e-300)
        for (auto& x : u) x /= un;
    std::vector<double> comps(n);
    for (NodeId t = 0; t < n; ++t) comps[t] = std::abs(u[t]);
    std::sort(comps.rbegin(), comps.rend());
    for (NodeId t = 0; t < n; ++t)
        res.network_value.points.emplace_back(t + 1.0, comps[t]);
    return res;
}

const DistributionSeries* StatReport::find(SeriesKind kind) const {
    for (const auto& s : series)
        if (s.kind == kind) return &s;
    return nullptr;
}

StatReport compute_report(const SparseGraph& g, const ReportOptions& opts) {
    StatReport rep;
    rep.scalars.n = g.num_nodes();
    rep.scalars.e = g.num_edges();
    if (g.num_nodes() > 0) {
        const auto wcc = weakly_connected_components(g);
        rep.scalars.n_c = wcc.largest_size;
        rep.scalars.frac_largest_wcc =
            static_cast<double>(wcc.largest_size) / static_cast<double>(g.num_nodes());
    }
    rep.series.push_back(degree_distribution(g, DegreeDirection::Out));
    rep.series.push_back(degree_distribution(g, DegreeDirection::In));
    rep.series.push_back(triangle_participation(g));
    const HopAggregate agg = bfs_sweep(g, opts.hop);
    DistributionSeries hp;
    hp.kind = SeriesKind::HopPlot;
    for (size_t h = 0; h < agg.cum_pairs.size(); ++h)
        hp.points.emplace_back(static_cast<double>(h), agg.cum_pairs[h]);
    rep.series.push_back(hp);
    if (agg.total_pairs > 0.0) {
        rep.scalars.effective_diameter = effective_diameter_from_hop_plot(hp);
        rep.scalars.int_diameter = agg.max_dist;
    }
    if (agg.pairs_excl_self > 0.0)
        rep.scalars.avg_path_length = agg.dist_sum / agg.pairs_excl_self;
    const auto cps = clustering_and_path_stats(g, opts.hop);
    rep.scalars.avg_clustering = cps.avg_clustering;
    if (opts.with_scree && g.num_nodes() > 0) {
        const int s = static_cast<int>(std::min<NodeId>(opts.top_singular, g.num_nodes()));
        auto scree = scree_and_network_values(g, s);
        rep.series.push_back(std::move(scree.scree));
        rep.series.push_back(std::move(scree.network_value));
    }
    return rep;
}

namespace {

double series_l1(const DistributionSeries& a, const DistributionSeries& b) {
    auto total = [](const DistributionSeries& s) {
        double t = 0.0;
        for (const auto& [x, y] : s.points) t += y;
        return t;
    };
    const double ta = total(a), tb = total(b);
    std::map<double, std::pair<double, double>> merged;
    for (const auto& [x, y] : a.points) merged[x].first += ta > 0 ? y / ta : 0.0;
    for (const auto& [x, y] : b.points) merged[x].second += tb > 0 ? y / tb : 0.0;
    double l1 = 0.0;
    for (const auto& [x, ys] : merged) l1 += std::abs(ys.first - ys.second);
    return l1;
}

void scalar_diff(ReportDivergence& d, const std::string& name, double a, double b) {
    d.scalar_abs[name] = std::abs(a - b);
}

}  // namespace

ReportDivergence compare_reports(const StatReport& a, const StatReport& b) {
    ReportDivergence d;
    for (const auto& sa : a.series) {
        const DistributionSeries* sb = b.find(sa.kind);
        if (!sb)
            throw DomainError("compare_reports: statistic " + series_kind_name(sa.kind) +
                              " missing from second report");
        d.series_l1[series_kind_name(sa.kind)] = series_l1(sa, *sb);
    }
    for (const auto& sb : b.series)
        if (!a.find(sb.kind))
            throw DomainError("compare_reports: statistic " + series_kind_name(sb.kind) +
                              " missing from first report");
    scalar_diff(d, "n", static_cast<double>(a.scalars.n), static_cast<double>(b.scalars.n));
    scalar_diff(d, "e", static_cast<double>(a.scalars.e), static_cast<double>(b.scalars.e));
    scalar_diff(d, "n_c", static_cast<double>(a.scalars.n_c), static_cast<double>(b.scalars.n_c));
    scalar_diff(d, "frac_largest_wcc", a.scalars.frac_largest_wcc, b.scalars.frac_largest_wcc);
    scalar_diff(d, "avg_clustering", a.scalars.avg_clustering, b.scalars.avg_clustering);
    if (a.scalars.effective_diameter && b.scalars.effective_diameter)
        scalar_diff(d, "effective_diameter", *a.scalars.effective_diameter,
                    *b.scalars.effective_diameter);
    if (a.scalars.avg_path_length && b.scalars.avg_path_length)
        scalar_diff(d, "avg_path_length", *a.scalars.avg_path_length, *b.scalars.avg_path_length);
    return d;
}

void write_series_csv(const DistributionSeries& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write series csv: " + path);
    out.precision(17);
    out << "x,y\n";
    for (const auto& [x, y] : s.points) out << x << "," << y << "\n";
    if (!out) throw IoError("write failure: " + path);
}

}  // namespace kron
