#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace kron {

using NodeId = int64_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable sparse directed graph: sorted duplicate-free adjacency in both
// directions plus a flat edge array (used for uniform edge sampling).
class SparseGraph {
public:
    static constexpr NodeId kUnreachable = std::numeric_limits<NodeId>::max();

    SparseGraph() = default;
    // Duplicate edges collapse; all IDs must lie in [0, n).
    SparseGraph(NodeId n, std::vector<Edge> edges);

    NodeId num_nodes() const { return n_; }
    int64_t num_edges() const { return e_; }

    const std::vector<NodeId>& out_neighbors(NodeId u) const { return out_adj_[u]; }
    const std::vector<NodeId>& in_neighbors(NodeId u) const { return in_adj_[u]; }
    const std::vector<Edge>& edges() const { return edges_; }

    int64_t out_degree(NodeId u) const { return static_cast<int64_t>(out_adj_[u].size()); }
    int64_t in_degree(NodeId u) const { return static_cast<int64_t>(in_adj_[u].size()); }

    bool has_edge(NodeId u, NodeId v) const;

private:
    NodeId n_ = 0;
    int64_t e_ = 0;
    std::vector<std::vector<NodeId>> out_adj_;
    std::vector<std::vector<NodeId>> in_adj_;
    std::vector<Edge> edges_;  // ascending (u,v)
};

struct ComponentLabeling {
    std::vector<int64_t> component_id;  // per node, in [0, component_count)
    int64_t component_count = 0;
    int64_t largest_size = 0;  // N_c
};

// Edge-list text format: lines "u<TAB>v", '#' comments, base-10 IDs.
// Node count = 1 + max ID seen. undirected inserts both directions.
SparseGraph load_edge_list(const std::string& path, bool directed = true);
void save_edge_list(const SparseGraph& g, const std::string& path);

ComponentLabeling weakly_connected_components(const SparseGraph& g);

// Hop distances from source; unreachable nodes get SparseGraph::kUnreachable.
std::vector<NodeId> bfs_distances(const SparseGraph& g, NodeId source, bool treat_undirected);

struct PaddedGraph {
    SparseGraph graph;
    int k = 0;
};

// Appends isolated nodes so the node count becomes the minimal n1^k >= n.
PaddedGraph pad_to_power(const SparseGraph& g, int n1);

}  // namespace kron
