#include "kron/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kron/errors.hpp"
#include "kron/kron.hpp"

namespace kron {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double cell_probability(const InitiatorMatrix& theta, int k, NodeId r, NodeId c) {
    const int n1 = theta.n1();
    double p = 1.0;
    for (int i = 0; i < k; ++i) {
        p *= theta.at(static_cast<int>(r % n1), static_cast<int>(c % n1));
        r /= n1;
        c /= n1;
    }
    return p;
}

double log_edge(double p) { return p > 0.0 ? std::log(p) : kNegInf; }
double log_no_edge(double p) { return p < 1.0 ? std::log1p(-p) : kNegInf; }
}  // namespace

NodePermutation::NodePermutation(NodeId n) : forward_(n), inverse_(n) {
    std::iota(forward_.begin(), forward_.end(), NodeId(0));
    std::iota(inverse_.begin(), inverse_.end(), NodeId(0));
}

NodePermutation NodePermutation::random(NodeId n, std::mt19937_64& rng) {
    NodePermutation p(n);
    std::shuffle(p.forward_.begin(), p.forward_.end(), rng);
    for (NodeId u = 0; u < n; ++u) p.inverse_[p.forward_[u]] = u;
    return p;
}

void NodePermutation::swap_nodes(NodeId u, NodeId v) {
    std::swap(forward_[u], forward_[v]);
    inverse_[forward_[u]] = u;
    inverse_[forward_[v]] = v;
}

double taylor_empty_loglik(const InitiatorMatrix& theta, int k, int order) {
    if (order < 2 || order > 5) throw DomainError("taylor order must be in [2,5]");
    double ll = 0.0;
    for (int m = 1; m <= order; ++m)
        ll -= std::pow(theta.entry_power_sum(m), k) / m;
    return ll;
}

std::vector<double> taylor_empty_gradient(const InitiatorMatrix& theta, int k, int order) {
    if (order < 2 || order > 5) throw DomainError("taylor order must be in [2,5]");
    const int n1 = theta.n1();
    std::vector<double> grad(static_cast<size_t>(n1) * n1, 0.0);
    for (int m = 1; m <= order; ++m) {
        const double outer = k * std::pow(theta.entry_power_sum(m), k - 1);
        for (size_t i = 0; i < grad.size(); ++i)
            grad[i] -= outer * std::pow(theta.entries()[i], m - 1);
    }
    return grad;
}

double log_likelihood_exact(const SparseGraph& g, const InitiatorMatrix& theta, int k,
                            const NodePermutation& sigma, NodeId dense_cap) {
    const NodeId n = g.num_nodes();
    if (n > dense_cap)
        throw SizeError("log_likelihood_exact is O(N^2); " + std::to_string(n) +
                        " nodes exceeds cap " + std::to_string(dense_cap));
    // Model-cell order makes the summation order independent of node labels.
    double ll = 0.0;
    for (NodeId r = 0; r < n; ++r) {
        const NodeId u = sigma.node_at(r);
        for (NodeId c = 0; c < n; ++c) {
            const NodeId v = sigma.node_at(c);
            const double p = cell_probability(theta, k, r, c);
            ll += g.has_edge(u, v) ? log_edge(p) : log_no_edge(p);
        }
    }
    return ll;
}

double log_likelihood_approx(const SparseGraph& g, const InitiatorMatrix& theta, int k,
                             const NodePermutation& sigma, int taylor_order) {
    double ll = taylor_empty_loglik(theta, k, taylor_order);
    for (const auto& [u, v] : g.edges()) {
        const double p = cell_probability(theta, k, sigma.pos(u), sigma.pos(v));
        ll += log_edge(p) - log_no_edge(p);
    }
    return ll;
}

namespace {

// Edges with an endpoint in {j, l}, each exactly once.
template <typename Fn>
void for_affected_edges(const SparseGraph& g, NodeId j, NodeId l, Fn&& fn) {
    for (NodeId v : g.out_neighbors(j)) fn(j, v);
    for (NodeId v : g.out_neighbors(l)) fn(l, v);
    for (NodeId u : g.in_neighbors(j))
        if (u != j && u != l) fn(u, j);
    for (NodeId u : g.in_neighbors(l))
        if (u != j && u != l) fn(u, l);
}

}  // namespace

double likelihood_ratio_swap(const SparseGraph& g, const InitiatorMatrix& theta, int k,
                             const NodePermutation& sigma, NodeId j, NodeId l,
                             bool exact_noedge) {
    if (j == l) return 0.0;
    const NodeId pj = sigma.pos(j), pl = sigma.pos(l);
    auto new_pos = [&](NodeId u) { return u == j ? pl : (u == l ? pj : sigma.pos(u)); };
    double delta = 0.0;
    if (!exact_noedge) {
        for_affected_edges(g, j, l, [&](NodeId u, NodeId v) {
            const double p_old = cell_probability(theta, k, sigma.pos(u), sigma.pos(v));
            const double p_new = cell_probability(theta, k, new_pos(u), new_pos(v));
            delta += (log_edge(p_new) - log_no_edge(p_new)) - (log_edge(p_old) - log_no_edge(p_old));
        });
        return delta;
    }
    const NodeId n = g.num_nodes();
    auto cell = [&](NodeId u, NodeId v) {
        const double p_old = cell_probability(theta, k, sigma.pos(u), sigma.pos(v));
        const double p_new = cell_probability(theta, k, new_pos(u), new_pos(v));
        if (g.has_edge(u, v))
            delta += log_edge(p_new) - log_edge(p_old);
        else
            delta += log_no_edge(p_new) - log_no_edge(p_old);
    };
    for (NodeId v = 0; v < n; ++v) cell(j, v);
    for (NodeId v = 0; v < n; ++v) cell(l, v);
    for (NodeId u = 0; u < n; ++u)
        if (u != j && u != l) { cell(u, j); cell(u, l); }
    return delta;
}

MetropolisChain::MetropolisChain(const SparseGraph& g, InitiatorMatrix theta, int k, double omega,
                                 int taylor_order, uint64_t seed, NodePermutation sigma)
    : g_(g),
      theta_(std::move(theta)),
      k_(k),
      n1_(theta_.n1()),
      omega_(omega),
      taylor_order_(taylor_order),
      rng_(seed),
      sigma_(std::move(sigma)) {
    if (omega_ < 0.0 || omega_ > 1.0) throw DomainError("omega must lie in [0,1]");
    if (sigma_.size() != g_.num_nodes())
        throw DomainError("permutation size does not match graph");
    // Digit lookup table: turns the hot cell-probability loop into table
    // reads instead of integer division.
    digits_.resize(static_cast<size_t>(g_.num_nodes()) * k_);
    for (NodeId p = 0; p < g_.num_nodes(); ++p) {
        NodeId rest = p;
        for (int i = 0; i < k_; ++i) {
            digits_[static_cast<size_t>(p) * k_ + i] = static_cast<uint8_t>(rest % n1_);
            rest /= n1_;
        }
    }
    recompute();
}

double MetropolisChain::cell_prob(NodeId r, NodeId c) const {
    const uint8_t* dr = &digits_[static_cast<size_t>(r) * k_];
    const uint8_t* dc = &digits_[static_cast<size_t>(c) * k_];
    const double* t = theta_.entries().data();
    double p = 1.0;
    for (int i = 0; i < k_; ++i) p *= t[static_cast<size_t>(dr[i]) * n1_ + dc[i]];
    return p;
}

double MetropolisChain::edge_term(NodeId r, NodeId c) const {
    // log p as a digit sum of log-theta avoids one log call per edge.
    const uint8_t* dr = &digits_[static_cast<size_t>(r) * k_];
    const uint8_t* dc = &digits_[static_cast<size_t>(c) * k_];
    const double* t = theta_.entries().data();
    double p = 1.0, lp = 0.0;
    for (int i = 0; i < k_; ++i) {
        const size_t cell = static_cast<size_t>(dr[i]) * n1_ + dc[i];
        p *= t[cell];
        lp += log_theta_[cell];
    }
    return lp - log_no_edge(p);
}

void MetropolisChain::add_edge_gradient(NodeId r, NodeId c, double sign) {
    const double p = cell_prob(r, c);
    const double scale = sign / (1.0 - p);
    const uint8_t* dr = &digits_[static_cast<size_t>(r) * k_];
    const uint8_t* dc = &digits_[static_cast<size_t>(c) * k_];
    for (int i = 0; i < k_; ++i) {
        const size_t cell = static_cast<size_t>(dr[i]) * n1_ + dc[i];
        edge_grad_[cell] += scale / theta_.entries()[cell];
    }
}

void MetropolisChain::recompute() {
    log_theta_.resize(theta_.entries().size());
    for (size_t i = 0; i < log_theta_.size(); ++i)
        log_theta_[i] = std::log(theta_.entries()[i]);
    empty_ll_ = taylor_empty_loglik(theta_, k_, taylor_order_);
    empty_grad_ = taylor_empty_gradient(theta_, k_, taylor_order_);
    edge_grad_.assign(static_cast<size_t>(n1_) * n1_, 0.0);
    ll_ = empty_ll_;
    for (const auto& [u, v] : g_.edges()) {
        ll_ += edge_term(sigma_.pos(u), sigma_.pos(v));
        add_edge_gradient(sigma_.pos(u), sigma_.pos(v), +1.0);
    }
}

void MetropolisChain::set_theta(InitiatorMatrix theta) {
    theta_ = std::move(theta);
    recompute();
}

bool MetropolisChain::step() {
    ++proposed_;
    const NodeId n = g_.num_nodes();
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<NodeId> pick_node(0, n - 1);
    NodeId j, l;
    const bool use_swap_nodes = unif(rng_) < omega_ || g_.num_edges() == 0;
    if (use_swap_nodes) {
        j = pick_node(rng_);
        do { l = pick_node(rng_); } while (l == j);
    } else {
        std::uniform_int_distribution<int64_t> pick_edge(0, g_.num_edges() - 1);
        const auto& e = g_.edges()[pick_edge(rng_)];
        j = e.first;
        l = e.second;
        if (j == l) return false;  // self-loop endpoints: no-op proposal
    }
    const NodeId pj = sigma_.pos(j), pl = sigma_.pos(l);
    auto new_pos = [&](NodeId u) { return u == j ? pl : (u == l ? pj : sigma_.pos(u)); };
    double delta = 0.0;
    for_affected_edges(g_, j, l, [&](NodeId u, NodeId v) {
        delta += edge_term(new_pos(u), new_pos(v)) - edge_term(sigma_.pos(u), sigma_.pos(v));
    });
    if (delta < 0.0 && unif(rng_) >= std::exp(delta)) return false;
    for_affected_edges(g_, j, l, [&](NodeId u, NodeId v) {
        add_edge_gradient(sigma_.pos(u), sigma_.pos(v), -1.0);
        add_edge_gradient(new_pos(u), new_pos(v), +1.0);
    });
    sigma_.swap_nodes(j, l);
    ll_ += delta;
    ++accepted_;
    return true;
}

void MetropolisChain::run(int64_t steps) {
    for (int64_t i = 0; i < steps; ++i) step();
}

std::vector<double> MetropolisChain::gradient() const {
    std::vector<double> grad = empty_grad_;
    for (size_t i = 0; i < grad.size(); ++i) grad[i] += edge_grad_[i];
    return grad;
}

GradientEstimate estimate_gradient(MetropolisChain& chain, int64_t samples, bool record_trace) {
    GradientEstimate est;
    const size_t m = chain.edge_gradient().size();
    std::vector<double> grad_acc(m, 0.0);
    double ll_acc = 0.0;
    int64_t accepted = 0;
    if (record_trace) est.loglik_trace.reserve(samples);
    for (int64_t t = 0; t < samples; ++t) {
        accepted += chain.step() ? 1 : 0;
        ll_acc += chain.loglik();
        const auto& eg = chain.edge_gradient();
        for (size_t i = 0; i < m; ++i) grad_acc[i] += eg[i];
        if (record_trace) est.loglik_trace.push_back(chain.loglik());
    }
    est.loglik = ll_acc / samples;
    est.gradient = chain.empty_gradient();
    for (size_t i = 0; i < m; ++i) est.gradient[i] += grad_acc[i] / samples;
    est.acceptance_fraction = static_cast<double>(accepted) / static_cast<double>(samples);
    return est;
}

namespace {
InitiatorMatrix random_initiator(int n1, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(lo, hi);
    std::vector<double> entries(static_cast<size_t>(n1) * n1);
    for (auto& v : entries) v = unif(rng);
    return InitiatorMatrix(n1, std::move(entries));
}
}  // namespace

FitResult fit(const SparseGraph& g, const FitConfig& config) {
    if (g.num_edges() == 0) throw FitError("cannot fit an empty graph");
    const PaddedGraph padded = pad_to_power(g, config.n1);
    const SparseGraph& pg = padded.graph;
    const int64_t e = pg.num_edges();

    std::mt19937_64 rng(config.seed);
    InitiatorMatrix theta = random_initiator(
        config.n1, std::max(0.1, config.min_theta), std::min(0.9, config.max_theta), rng);

    NodePermutation sigma = NodePermutation::random(pg.num_nodes(), rng);
    MetropolisChain chain(pg, theta, padded.k, config.omega, config.taylor_order, rng(), sigma);
    chain.run(config.burn_in);

    FitResult result;
    result.k = padded.k;
    result.padded_n = pg.num_nodes();
    result.original_n = g.num_nodes();

    double lambda = config.base_learning_rate / static_cast<double>(e);
    double prev_ll = kNegInf;
    double best_ll = kNegInf;
    InitiatorMatrix best_theta = theta;
    bool any_finite = false;
    int64_t total_accepted = 0, total_proposed = 0;

    for (int iter = 0; iter < config.iterations; ++iter) {
        const bool last = iter + 1 == config.iterations;
        chain.reset_counters();
        GradientEstimate est = estimate_gradient(chain, config.samples_per_step, last);
        total_accepted += chain.accepted();
        total_proposed += chain.proposed();
        result.trace.push_back({est.loglik, theta});
        if (last) result.final_loglik_trace = std::move(est.loglik_trace);
        if (std::isfinite(est.loglik)) {
            any_finite = true;
            if (est.loglik > best_ll) {
                best_ll = est.loglik;
                best_theta = theta;
            }
            if (est.loglik < prev_ll) lambda *= 0.5;
            prev_ll = est.loglik;
        }
        if (!last) {
            std::vector<double> entries = theta.entries();
            for (size_t i = 0; i < entries.size(); ++i) {
                double step = lambda * est.gradient[i];
                step = std::clamp(step, -config.max_step, config.max_step);
                if (!std::isfinite(step)) step = 0.0;
                entries[i] = std::clamp(entries[i] + step, config.min_theta, config.max_theta);
            }
            theta = InitiatorMatrix(config.n1, std::move(entries));
            chain.set_theta(theta);
        }
    }

    if (config.iterations == 0) {
        best_ll = chain.loglik();
        best_theta = theta;
        any_finite = std::isfinite(best_ll);
        result.trace.push_back({best_ll, theta});
    }
    if (!any_finite) throw FitError("log-likelihood never became finite during fitting");

    result.theta_hat = best_theta;
    result.loglik = best_ll;
    result.bic = bic_score(best_ll, config.n1, g.num_nodes());
    result.acceptance_fraction =
        total_proposed ? static_cast<double>(total_accepted) / total_proposed : 0.0;
    return result;
}

double bic_score(double loglik, int n1, NodeId n_unpadded) {
    return -loglik +
           0.5 * static_cast<double>(n1) * n1 *
               std::log(static_cast<double>(n_unpadded) * static_cast<double>(n_unpadded));
}

SelectionTable select_initiator_size(const SparseGraph& g, const std::vector<int>& sizes,
                                     FitConfig config) {
    SelectionTable table;
    double best_bic = std::numeric_limits<double>::infinity();
    for (int n1 : sizes) {
        SelectionRow row;
        row.n1 = n1;
        try {
            config.n1 = n1;
            FitResult res = fit(g, config);
            row.ok = true;
            row.loglik = res.loglik;
            row.bic = res.bic;
            row.padded_n = res.padded_n;
            row.theta_hat = res.theta_hat;
            const SparseGraph realization =
                generate_fast(KroneckerPowerSpec(res.theta_hat, res.k), config.seed + 7);
            for (NodeId u = 0; u < realization.num_nodes(); ++u)
                if (realization.out_degree(u) + realization.in_degree(u) > 0) ++row.nonisolated;
            if (row.bic < best_bic) {
                best_bic = row.bic;
                table.best_n1 = n1;
            }
        } catch (const std::exception& ex) {
            row.ok = false;
            row.error = ex.what();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<double> uniform_permutation_likelihood_profile(const SparseGraph& g,
                                                           const InitiatorMatrix& theta, int k,
                                                           int64_t count, uint64_t seed,
                                                           int taylor_order) {
    if (count < 1) throw DomainError("profile count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> lls;
    lls.reserve(count);
    for (int64_t i = 0; i < count; ++i) {
        const NodePermutation sigma = NodePermutation::random(g.num_nodes(), rng);
        lls.push_back(log_likelihood_approx(g, theta, k, sigma, taylor_order));
    }
    std::sort(lls.begin(), lls.end());
    return lls;
}

}  // namespace kron
