#pragma once

#include <random>
#include <vector>

#include "kron/graph.hpp"
#include "kron/matrix.hpp"

namespace testutil {

inline kron::InitiatorMatrix init2(double a, double b, double c, double d) {
    return kron::InitiatorMatrix(2, {a, b, c, d});
}

inline kron::InitiatorMatrix paper_theta() { return init2(0.8, 0.6, 0.5, 0.3); }

// 4-node chain with a self-loop on every node, symmetric.
inline kron::InitiatorMatrix chain4_self_loops() {
    return kron::InitiatorMatrix(4, {1, 1, 0, 0,
                                     1, 1, 1, 0,
                                     0, 1, 1, 1,
                                     0, 0, 1, 1});
}

inline kron::SparseGraph random_graph(kron::NodeId n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<kron::Edge> edges;
    for (kron::NodeId u = 0; u < n; ++u)
        for (kron::NodeId v = 0; v < n; ++v)
            if (unif(rng) < p) edges.emplace_back(u, v);
    return kron::SparseGraph(n, std::move(edges));
}

// Relabels every node through perm (perm[u] = new id).
inline kron::SparseGraph relabel(const kron::SparseGraph& g, const std::vector<kron::NodeId>& perm) {
    std::vector<kron::Edge> edges;
    edges.reserve(g.num_edges());
    for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return kron::SparseGraph(g.num_nodes(), std::move(edges));
}

inline std::vector<kron::NodeId> random_relabeling(kron::NodeId n, std::mt19937_64& rng) {
    std::vector<kron::NodeId> perm(n);
    for (kron::NodeId i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

}  // namespace testutil
