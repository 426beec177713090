#pragma once

#include <cstdint>

#include "kron/graph.hpp"
#include "kron/matrix.hpp"

namespace kron {

// Initiator raised to the k-th Kronecker power: a graph/matrix on n1^k nodes.
struct KroneckerPowerSpec {
    InitiatorMatrix initiator;
    int k = 1;

    KroneckerPowerSpec(InitiatorMatrix init, int k_);
    NodeId num_nodes() const;  // n1^k
};

DenseMatrix kron_product(const DenseMatrix& a, const DenseMatrix& b);

// Dense k-th power; test-only, capped (default 4096 rows).
DenseMatrix kron_power_dense(const KroneckerPowerSpec& spec, NodeId dense_cap = 4096);

// P_k[u,v] as the product of initiator entries along the base-n1 digits of
// u and v; O(k), never materializes P_k.
double edge_probability(const KroneckerPowerSpec& spec, NodeId u, NodeId v);

// Deterministic Kronecker graph of a 0/1 initiator: edge iff probability 1.
SparseGraph generate_deterministic(const KroneckerPowerSpec& spec);

// O(N^2) reference sampler: every ordered pair is an independent Bernoulli.
SparseGraph realize_naive(const KroneckerPowerSpec& spec, uint64_t seed,
                          NodeId node_cap = NodeId(1) << 16);

struct FastGenOptions {
    int max_retries_per_edge = 1000;
};

// Linear-time sampler: draws the edge count from a normal approximation
// (mean (sum theta)^k, variance (sum theta)^k - (sum theta^2)^k), then
// places each edge by k-level recursive descent; collisions redraw the
// whole descent.
SparseGraph generate_fast(const KroneckerPowerSpec& spec, uint64_t seed,
                          const FastGenOptions& opts = {});

// Replaces each 1 of a binary initiator with alpha and each 0 with beta.
InitiatorMatrix initiator_from_binary(const InitiatorMatrix& k1, double alpha, double beta);

}  // namespace kron
