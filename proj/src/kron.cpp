#include "kron/kron.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

#include "kron/errors.hpp"

namespace kron {

KroneckerPowerSpec::KroneckerPowerSpec(InitiatorMatrix init, int k_)
    : initiator(std::move(init)), k(k_) {
    if (k < 1) throw DomainError("Kronecker power k must be >= 1");
    NodeId n = 1;
    for (int i = 0; i < k; ++i) {
        if (n > std::numeric_limits<NodeId>::max() / initiator.n1())
            throw SizeError("n1^k does not fit in a node id");
        n *= initiator.n1();
    }
}

NodeId KroneckerPowerSpec::num_nodes() const {
    NodeId n = 1;
    for (int i = 0; i < k; ++i) n *= initiator.n1();
    return n;
}

DenseMatrix kron_product(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows <= 0 || a.cols <= 0 || b.rows <= 0 || b.cols <= 0)
        throw DomainError("kron_product requires non-empty matrices");
    if (static_cast<int64_t>(a.rows) * b.rows > std::numeric_limits<int>::max() ||
        static_cast<int64_t>(a.cols) * b.cols > std::numeric_limits<int>::max())
        throw SizeError("kron_product result dimensions overflow");
    DenseMatrix c(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const double aij = a.at(i, j);
            for (int p = 0; p < b.rows; ++p)
                for (int q = 0; q < b.cols; ++q)
                    c.at(i * b.rows + p, j * b.cols + q) = aij * b.at(p, q);
        }
    return c;
}

DenseMatrix kron_power_dense(const KroneckerPowerSpec& spec, NodeId dense_cap) {
    if (spec.num_nodes() > dense_cap)
        throw SizeError("dense Kronecker power of " + std::to_string(spec.num_nodes()) +
                        " rows exceeds cap " + std::to_string(dense_cap));
    DenseMatrix result = spec.initiator.to_dense();
    const DenseMatrix base = spec.initiator.to_dense();
    for (int i = 1; i < spec.k; ++i) result = kron_product(result, base);
    return result;
}

double edge_probability(const KroneckerPowerSpec& spec, NodeId u, NodeId v) {
    const NodeId n = spec.num_nodes();
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw BoundsError("node id out of range for n1^k = " + std::to_string(n));
    const int n1 = spec.initiator.n1();
    double p = 1.0;
    for (int i = 0; i < spec.k; ++i) {
        p *= spec.initiator.at(static_cast<int>(u % n1), static_cast<int>(v % n1));
        u /= n1;
        v /= n1;
    }
    return p;
}

SparseGraph generate_deterministic(const KroneckerPowerSpec& spec) {
    if (!spec.initiator.is_binary())
        throw DomainError("deterministic generation requires a 0/1 initiator");
    const int n1 = spec.initiator.n1();
    const NodeId n = spec.num_nodes();
    // Expand edges level by level: digit pairs must all be initiator edges.
    std::vector<Edge> cur;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j)
            if (spec.initiator.at(i, j) == 1.0) cur.emplace_back(i, j);
    std::vector<Edge> base = cur;
    for (int level = 1; level < spec.k; ++level) {
        std::vector<Edge> next;
        next.reserve(cur.size() * base.size());
        for (const auto& [u, v] : cur)
            for (const auto& [i, j] : base) next.emplace_back(u * n1 + i, v * n1 + j);
        cur = std::move(next);
    }
    return SparseGraph(n, std::move(cur));
}

SparseGraph realize_naive(const KroneckerPowerSpec& spec, uint64_t seed, NodeId node_cap) {
    const NodeId n = spec.num_nodes();
    if (n > node_cap)
        throw SizeError("realize_naive covers all N^2 pairs; " + std::to_string(n) +
                        " nodes exceeds cap " + std::to_string(node_cap) + ", use generate_fast");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            if (unif(rng) < edge_probability(spec, u, v)) edges.emplace_back(u, v);
    return SparseGraph(n, std::move(edges));
}

SparseGraph generate_fast(const KroneckerPowerSpec& spec, uint64_t seed, const FastGenOptions& opts) {
    const InitiatorMatrix& theta = spec.initiator;
    const int n1 = theta.n1();
    const NodeId n = spec.num_nodes();
    const double s1 = theta.edge_sum();
    if (s1 <= 0.0) throw DomainError("generate_fast requires positive initiator mass");
    const double s2 = theta.entry_power_sum(2);
    const double mean = std::pow(s1, spec.k);
    const double var = std::max(0.0, std::pow(s1, spec.k) - std::pow(s2, spec.k));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> edge_count_dist(mean, std::sqrt(var));
    int64_t target = std::llround(edge_count_dist(rng));
    if (target < 0) target = 0;

    // Cumulative cell mass over the n1^2 initiator cells for the descent.
    std::vector<double> cum;
    cum.reserve(static_cast<size_t>(n1) * n1);
    double acc = 0.0;
    for (double v : theta.entries()) { acc += v; cum.push_back(acc); }
    std::uniform_real_distribution<double> unif(0.0, acc);

    std::unordered_set<uint64_t> seen;
    seen.reserve(static_cast<size_t>(target) * 2);
    std::vector<Edge> edges;
    edges.reserve(target);
    for (int64_t e = 0; e < target; ++e) {
        bool placed = false;
        for (int attempt = 0; attempt < opts.max_retries_per_edge; ++attempt) {
            NodeId u = 0, v = 0;
            for (int level = 0; level < spec.k; ++level) {
                const double r = unif(rng);
                const size_t cell =
                    std::lower_bound(cum.begin(), cum.end(), r) - cum.begin();
                const size_t c = std::min(cell, cum.size() - 1);
                u = u * n1 + static_cast<NodeId>(c / n1);
                v = v * n1 + static_cast<NodeId>(c % n1);
            }
            const uint64_t key = (static_cast<uint64_t>(u) << 32) | static_cast<uint64_t>(v);
            if (seen.insert(key).second) {
                edges.emplace_back(u, v);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw SaturationError("could not place edge " + std::to_string(e + 1) + " of " +
                                  std::to_string(target) + " after " +
                                  std::to_string(opts.max_retries_per_edge) + " retries");
    }
    return SparseGraph(n, std::move(edges));
}

InitiatorMatrix initiator_from_binary(const InitiatorMatrix& k1, double alpha, double beta) {
    if (!k1.is_binary()) throw DomainError("initiator_from_binary requires 0/1 entries");
    if (!(beta >= 0.0 && alpha <= 1.0 && beta <= alpha))
        throw DomainError("need 0 <= beta <= alpha <= 1");
    std::vector<double> entries = k1.entries();
    for (double& v : entries) v = (v == 1.0) ? alpha : beta;
    return InitiatorMatrix(k1.n1(), std::move(entries));
}

}  // namespace kron
