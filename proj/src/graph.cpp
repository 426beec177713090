#include "kron/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>

#include "kron/errors.hpp"

namespace kron {

SparseGraph::SparseGraph(NodeId n, std::vector<Edge> edges) : n_(n) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out_adj_.assign(n_, {});
    in_adj_.assign(n_, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw BoundsError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                              ") outside node range [0," + std::to_string(n_) + ")");
        out_adj_[u].push_back(v);
        in_adj_[v].push_back(u);
    }
    for (auto& a : in_adj_) std::sort(a.begin(), a.end());
    edges_ = std::move(edges);
    e_ = static_cast<int64_t>(edges_.size());
}

bool SparseGraph::has_edge(NodeId u, NodeId v) const {
    if (u < 0 || u >= n_) return false;
    const auto& a = out_adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

SparseGraph load_edge_list(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path);
    std::vector<Edge> edges;
    NodeId max_id = -1;
    std::string line;
    int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        NodeId u, v;
        if (!(ls >> u >> v) || u < 0 || v < 0) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed edge line: " + line);
        }
        edges.emplace_back(u, v);
        if (!directed) edges.emplace_back(v, u);
        max_id = std::max({max_id, u, v});
    }
    if (max_id < 0) throw ParseError(path + ": empty edge list");
    return SparseGraph(max_id + 1, std::move(edges));
}

void save_edge_list(const SparseGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write edge list: " + path);
    out << "# nodes " << g.num_nodes() << "\n# edges " << g.num_edges() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << "\t" << v << "\n";
    if (!out) throw IoError("write failure: " + path);
}

ComponentLabeling weakly_connected_components(const SparseGraph& g) {
    ComponentLabeling lab;
    const NodeId n = g.num_nodes();
    lab.component_id.assign(n, -1);
    std::vector<NodeId> stack;
    std::vector<int64_t> sizes;
    for (NodeId s = 0; s < n; ++s) {
        if (lab.component_id[s] >= 0) continue;
        int64_t cid = lab.component_count++;
        int64_t size = 0;
        stack.push_back(s);
        lab.component_id[s] = cid;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            ++size;
            for (NodeId v : g.out_neighbors(u))
                if (lab.component_id[v] < 0) { lab.component_id[v] = cid; stack.push_back(v); }
            for (NodeId v : g.in_neighbors(u))
                if (lab.component_id[v] < 0) { lab.component_id[v] = cid; stack.push_back(v); }
        }
        sizes.push_back(size);
        lab.largest_size = std::max(lab.largest_size, size);
    }
    return lab;
}

std::vector<NodeId> bfs_distances(const SparseGraph& g, NodeId source, bool treat_undirected) {
    const NodeId n = g.num_nodes();
    if (source < 0 || source >= n) throw BoundsError("bfs source " + std::to_string(source) + " out of range");
    std::vector<NodeId> dist(n, SparseGraph::kUnreachable);
    std::deque<NodeId> q{source};
    dist[source] = 0;
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop_front();
        auto visit = [&](NodeId v) {
            if (dist[v] == SparseGraph::kUnreachable) { dist[v] = dist[u] + 1; q.push_back(v); }
        };
        for (NodeId v : g.out_neighbors(u)) visit(v);
        if (treat_undirected)
            for (NodeId v : g.in_neighbors(u)) visit(v);
    }
    return dist;
}

PaddedGraph pad_to_power(const SparseGraph& g, int n1) {
    if (n1 < 2) throw DomainError("pad_to_power requires n1 >= 2");
    int k = 1;
    NodeId nk = n1;
    while (nk < g.num_nodes()) {
        if (nk > std::numeric_limits<NodeId>::max() / n1)
            throw SizeError("n1^k overflows node id range");
        nk *= n1;
        ++k;
    }
    PaddedGraph out;
    out.k = k;
    out.graph = SparseGraph(nk, g.edges());
    return out;
}

}  // namespace kron
