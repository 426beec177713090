#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kron/graph.hpp"
#include "kron/matrix.hpp"

namespace kron {

// Bijection between graph node IDs and rows/columns of the model matrix.
class NodePermutation {
public:
    NodePermutation() = default;
    explicit NodePermutation(NodeId n);  // identity
    static NodePermutation random(NodeId n, std::mt19937_64& rng);

    NodeId size() const { return static_cast<NodeId>(forward_.size()); }
    NodeId pos(NodeId u) const { return forward_[u]; }
    NodeId node_at(NodeId p) const { return inverse_[p]; }
    const std::vector<NodeId>& forward() const { return forward_; }

    // Exchanges the model positions of graph nodes u and v.
    void swap_nodes(NodeId u, NodeId v);

private:
    std::vector<NodeId> forward_;
    std::vector<NodeId> inverse_;
};

struct FitConfig {
    int n1 = 2;
    int iterations = 100;
    int64_t samples_per_step = 500000;
    int64_t burn_in = 10000;
    double omega = 0.6;  // SwapNodes probability
    double base_learning_rate = 10.0;  // lambda = base / E, halved on ll decrease
    double max_step = 0.05;            // per-entry update magnitude clamp
    double min_theta = 0.001;
    double max_theta = 0.999;
    int taylor_order = 2;  // empty-graph approximation order, 2..5
    uint64_t seed = 0;
};

// -sum_{m=1..order} (1/m) (sum_ij theta_ij^m)^k : Taylor approximation of
// the log-likelihood of an empty graph.
double taylor_empty_loglik(const InitiatorMatrix& theta, int k, int order);
// Its closed-form gradient, row-major n1^2 entries.
std::vector<double> taylor_empty_gradient(const InitiatorMatrix& theta, int k, int order);

// Reference O(N^2 k) likelihood over every model cell; test-only.
// Returns -inf (not an exception) when an observed edge has probability 0
// or an absent edge probability 1.
double log_likelihood_exact(const SparseGraph& g, const InitiatorMatrix& theta, int k,
                            const NodePermutation& sigma, NodeId dense_cap = 4096);

// O(E k): Taylor empty-graph term plus per-edge corrections.
double log_likelihood_approx(const SparseGraph& g, const InitiatorMatrix& theta, int k,
                             const NodePermutation& sigma, int taylor_order = 2);

// Log of P(sigma'|G,Theta)/P(sigma|G,Theta) where sigma' swaps the model
// positions of nodes j and l. In the default mode the no-edge mass of the
// affected rows/columns cancels exactly (their closed-form Taylor row/column
// sums are invariant under the swap), leaving only terms for edges incident
// to j or l: O((deg j + deg l) k). With exact_noedge the four affected
// rows/columns are traversed in full, matching differences of
// log_likelihood_exact.
double likelihood_ratio_swap(const SparseGraph& g, const InitiatorMatrix& theta, int k,
                             const NodePermutation& sigma, NodeId j, NodeId l,
                             bool exact_noedge = false);

// Metropolis chain over node permutations; maintains the approximate
// log-likelihood and the edge-correction part of the gradient incrementally.
class MetropolisChain {
public:
    MetropolisChain(const SparseGraph& g, InitiatorMatrix theta, int k, double omega,
                    int taylor_order, uint64_t seed, NodePermutation sigma);

    // One proposal (SwapNodes w.p. omega, else SwapEdgeEndpoints);
    // returns whether it was accepted.
    bool step();
    void run(int64_t steps);

    // Swaps theta while keeping the current permutation (warm start).
    void set_theta(InitiatorMatrix theta);

    double loglik() const { return ll_; }
    // Full gradient: empty-graph term plus current edge corrections.
    std::vector<double> gradient() const;
    const std::vector<double>& edge_gradient() const { return edge_grad_; }
    const std::vector<double>& empty_gradient() const { return empty_grad_; }
    const NodePermutation& permutation() const { return sigma_; }
    const InitiatorMatrix& theta() const { return theta_; }

    int64_t accepted() const { return accepted_; }
    int64_t proposed() const { return proposed_; }
    void reset_counters() { accepted_ = proposed_ = 0; }

private:
    void recompute();
    double cell_prob(NodeId r, NodeId c) const;
    double edge_term(NodeId r, NodeId c) const;  // log p - log(1-p) at model cell
    void add_edge_gradient(NodeId r, NodeId c, double sign);

    const SparseGraph& g_;
    InitiatorMatrix theta_;
    int k_;
    int n1_;
    double omega_;
    int taylor_order_;
    std::mt19937_64 rng_;
    NodePermutation sigma_;
    std::vector<uint8_t> digits_;  // base-n1 digits of every model position, low first
    std::vector<double> log_theta_;  // log of each initiator entry
    double ll_ = 0.0;
    double empty_ll_ = 0.0;
    std::vector<double> edge_grad_;
    std::vector<double> empty_grad_;
    int64_t accepted_ = 0;
    int64_t proposed_ = 0;
};

struct GradientEstimate {
    double loglik = 0.0;            // average over sampled permutations
    std::vector<double> gradient;   // averaged full gradient
    double acceptance_fraction = 0.0;
    std::vector<double> loglik_trace;  // per-sample, only when requested
};

GradientEstimate estimate_gradient(MetropolisChain& chain, int64_t samples,
                                   bool record_trace = false);

struct FitStep {
    double loglik = 0.0;
    InitiatorMatrix theta;
};

struct FitResult {
    InitiatorMatrix theta_hat;
    double loglik = 0.0;
    double bic = 0.0;
    std::vector<FitStep> trace;
    double acceptance_fraction = 0.0;
    std::vector<double> final_loglik_trace;  // per-sample trace of the last step
    int k = 0;
    NodeId padded_n = 0;
    NodeId original_n = 0;
};

FitResult fit(const SparseGraph& g, const FitConfig& config);

// BIC(N1) = -loglik + 0.5 N1^2 log(N^2), natural log, N unpadded.
double bic_score(double loglik, int n1, NodeId n_unpadded);

struct SelectionRow {
    int n1 = 0;
    bool ok = false;
    std::string error;
    double loglik = 0.0;
    double bic = 0.0;
    NodeId padded_n = 0;
    int64_t nonisolated = 0;  // in a realization generated from theta_hat
    InitiatorMatrix theta_hat;
};

struct SelectionTable {
    std::vector<SelectionRow> rows;
    int best_n1 = 0;  // argmin BIC among successful rows
};

SelectionTable select_initiator_size(const SparseGraph& g, const std::vector<int>& sizes,
                                     FitConfig config);

// Log-likelihoods at `count` uniformly random permutations, sorted ascending.
std::vector<double> uniform_permutation_likelihood_profile(const SparseGraph& g,
                                                           const InitiatorMatrix& theta, int k,
                                                           int64_t count, uint64_t seed,
                                                           int taylor_order = 2);

}  // namespace kron
