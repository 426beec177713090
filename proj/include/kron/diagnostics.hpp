#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace kron {

struct ChainDiagnostics {
    // (lag, r_lag) of the log-likelihood series; averaged over chains.
    std::vector<std::pair<int64_t, double>> autocorrelation;
    bool autocorrelation_defined = true;  // false for constant traces (beyond lag 0)
    // (prefix length K, sqrt(Rhat)); requires >= 2 equal-length traces.
    std::vector<std::pair<int64_t, double>> potential_scale_reduction;
    // Fraction of consecutive samples whose value changed; tracks the
    // Metropolis acceptance fraction.
    double move_fraction = 0.0;
};

ChainDiagnostics chain_diagnostics(const std::vector<std::vector<double>>& traces,
                                   int64_t max_lag = 100, int psr_points = 50);

// Gelman-Rubin sqrt(Rhat) for the first `prefix` samples of each chain.
double potential_scale_reduction(const std::vector<std::vector<double>>& traces, int64_t prefix);

}  // namespace kron
