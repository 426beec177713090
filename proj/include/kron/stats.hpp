#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kron/graph.hpp"

namespace kron {

enum class SeriesKind {
    DegreeIn,
    DegreeOut,
    Scree,
    NetworkValue,
    TriangleParticipation,
    HopPlot,
};

std::string series_kind_name(SeriesKind kind);

enum class Binning { Raw, Exponential };

// (x, y) series with strictly increasing x and nonnegative y.
struct DistributionSeries {
    SeriesKind kind{};
    Binning binning = Binning::Raw;
    std::vector<std::pair<double, double>> points;
};

// Buckets whose upper bounds grow by `ratio`; y values are summed per bucket
// and x becomes the bucket's geometric midpoint.
DistributionSeries exponential_bin(const DistributionSeries& s, double ratio = 1.3);

enum class DegreeDirection { Out, In };

DistributionSeries degree_distribution(const SparseGraph& g, DegreeDirection direction);

struct HopPlotOptions {
    // 0 = exact from every node when n <= exact_cap, else sample this many sources.
    int64_t sample_sources = 0;
    NodeId exact_cap = 50000;
    uint64_t seed = 1;
};

// Cumulative count of ordered (u,v) pairs with v within h hops of u,
// including the n self-pairs at h = 0; directed reachability.
DistributionSeries hop_plot(const SparseGraph& g, const HopPlotOptions& opts = {});

// Smallest interpolated x with g(x) >= 0.9 of all reachable pairs; the
// interpolation grid starts at (0, self-pair fraction).
double effective_diameter(const SparseGraph& g, const HopPlotOptions& opts = {});
double effective_diameter_from_hop_plot(const DistributionSeries& plot);

// Largest finite hop distance over reachable ordered pairs.
int64_t integer_diameter(const SparseGraph& g);

struct ScreeResult {
    DistributionSeries scree;          // (rank, singular value), nonincreasing
    DistributionSeries network_value;  // (rank, |component| of leading left singular vector)
    bool converged = true;
};

struct ScreeOptions {
    double rel_tolerance = 1e-6;
    int max_iterations = 1000;
    uint64_t seed = 12345;  // deterministic start vectors
};

ScreeResult scree_and_network_values(const SparseGraph& g, int top_s,
                                     const ScreeOptions& opts = {});

// Per-node triangle counts over the undirected simple view (self-loops
// dropped); returns (triangle count, node count) pairs.
DistributionSeries triangle_participation(const SparseGraph& g);

struct ClusteringPathStats {
    double avg_clustering = 0.0;            // over nodes with undirected degree >= 2
    std::optional<double> avg_path_length;  // over connected ordered pairs u != v
};

ClusteringPathStats clustering_and_path_stats(const SparseGraph& g,
                                              const HopPlotOptions& opts = {});

// Least-squares slope of log(e) against log(n) across snapshots.
double densification_exponent(const std::vector<std::pair<int64_t, int64_t>>& snapshots);

struct ScalarStats {
    int64_t n = 0;
    int64_t e = 0;
    int64_t n_c = 0;
    double frac_largest_wcc = 0.0;
    std::optional<double> effective_diameter;
    std::optional<int64_t> int_diameter;
    double avg_clustering = 0.0;
    std::optional<double> avg_path_length;
    std::optional<double> dpl_exponent;
};

struct StatReport {
    ScalarStats scalars;
    std::vector<DistributionSeries> series;

    const DistributionSeries* find(SeriesKind kind) const;
};

struct ReportOptions {
    int top_singular = 20;
    HopPlotOptions hop;
    bool with_scree = true;
};

StatReport compute_report(const SparseGraph& g, const ReportOptions& opts = {});

struct ReportDivergence {
    // L1 distance between normalized series, keyed by series kind name.
    std::map<std::string, double> series_l1;
    // Absolute scalar differences, keyed by scalar name.
    std::map<std::string, double> scalar_abs;
};

ReportDivergence compare_reports(const StatReport& a, const StatReport& b);

// CSV emission: header "x,y", full-precision decimals.
void write_series_csv(const DistributionSeries& s, const std::string& path);

}  // namespace kron
