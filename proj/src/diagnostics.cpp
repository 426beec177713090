#include "kron/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kron/errors.hpp"

namespace kron {

namespace {

double mean_of(const std::vector<double>& x, int64_t len) {
    double s = 0.0;
    for (int64_t i = 0; i < len; ++i) s += x[i];
    return s / len;
}

}  // namespace

double potential_scale_reduction(const std::vector<std::vector<double>>& traces, int64_t prefix) {
    const int64_t j_chains = static_cast<int64_t>(traces.size());
    if (j_chains < 2) throw DomainError("potential scale reduction needs >= 2 chains");
    if (prefix < 2) throw DomainError("potential scale reduction needs prefix >= 2");
    for (const auto& t : traces)
        if (static_cast<int64_t>(t.size()) < prefix)
            throw DomainError("trace shorter than requested prefix");

    const int64_t K = prefix;
    std::vector<double> chain_means(j_chains);
    for (int64_t j = 0; j < j_chains; ++j) chain_means[j] = mean_of(traces[j], K);
    double grand = 0.0;
    for (double m : chain_means) grand += m;
    grand /= j_chains;

    double var_b = 0.0;
    for (double m : chain_means) var_b += (m - grand) * (m - grand);
    var_b *= static_cast<double>(K) / (j_chains - 1);

    double var_w = 0.0;
    for (int64_t j = 0; j < j_chains; ++j)
        for (int64_t t = 0; t < K; ++t) {
            const double d = traces[j][t] - chain_means[j];
            var_w += d * d;
        }
    var_w /= static_cast<double>(j_chains) * (K - 1);

    const double var_hat = (K - 1.0) / K * var_w + var_b / K;
    if (var_w <= 0.0) return var_b <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return std::max(1.0, std::sqrt(var_hat / var_w));  // >= 1 up to numerical noise
}

ChainDiagnostics chain_diagnostics(const std::vector<std::vector<double>>& traces,
                                   int64_t max_lag, int psr_points) {
    if (traces.empty()) throw DomainError("chain_diagnostics needs at least one trace");
    ChainDiagnostics diag;

    // Autocorrelation, averaged across chains.
    int64_t min_len = traces[0].size();
    for (const auto& t : traces) min_len = std::min<int64_t>(min_len, t.size());
    const int64_t lags = std::min(max_lag, std::max<int64_t>(0, min_len - 1));
    std::vector<double> acc(lags + 1, 0.0);
    int used_chains = 0;
    for (const auto& t : traces) {
        const int64_t len = static_cast<int64_t>(t.size());
        const double m = mean_of(t, len);
        double var = 0.0;
        for (double x : t) var += (x - m) * (x - m);
        var /= len;
        if (var <= 0.0) {
            diag.autocorrelation_defined = false;
            continue;
        }
        ++used_chains;
        for (int64_t lag = 0; lag <= lags; ++lag) {
            double cov = 0.0;
            for (int64_t i = 0; i + lag < len; ++i) cov += (t[i] - m) * (t[i + lag] - m);
            cov /= (len - lag);
            acc[lag] += cov / var;
        }
    }
    if (used_chains > 0) {
        for (int64_t lag = 0; lag <= lags; ++lag)
            diag.autocorrelation.emplace_back(lag, acc[lag] / used_chains);
    } else {
        diag.autocorrelation.emplace_back(0, 1.0);  // r_0 defined even for constants
    }

    // Move fraction across all chains.
    int64_t moves = 0, pairs = 0;
    for (const auto& t : traces)
        for (size_t i = 1; i < t.size(); ++i) {
            ++pairs;
            moves += t[i] != t[i - 1] ? 1 : 0;
        }
    diag.move_fraction = pairs ? static_cast<double>(moves) / pairs : 0.0;

    // sqrt(Rhat) over a ladder of prefix lengths.
    if (traces.size() >= 2 && min_len >= 2) {
        std::vector<int64_t> prefixes;
        for (int i = 1; i <= psr_points; ++i) {
            int64_t p = min_len * i / psr_points;
            if (p >= 2 && (prefixes.empty() || p > prefixes.back())) prefixes.push_back(p);
        }
        for (int64_t p : prefixes)
            diag.potential_scale_reduction.emplace_back(p, potential_scale_reduction(traces, p));
    }
    return diag;
}

}  // namespace kron
