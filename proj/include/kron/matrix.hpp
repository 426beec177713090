#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace kron {

// Plain row-major dense matrix. Used for small initiators and the
// test-only dense Kronecker powers; production paths never materialize
// the full probability matrix.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), values(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return values[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * cols + j]; }
};

// Square matrix of entries in [0,1]. Doubles as the deterministic 0/1
// initiator K1 and the stochastic parameter matrix Theta.
class InitiatorMatrix {
public:
    InitiatorMatrix() = default;
    // Validates n1 >= 2, entries.size() == n1*n1, every entry in [0,1].
    InitiatorMatrix(int n1, std::vector<double> entries);

    int n1() const { return n1_; }
    const std::vector<double>& entries() const { return entries_; }

    double at(int i, int j) const { return entries_[static_cast<size_t>(i) * n1_ + j]; }
    void set(int i, int j, double v);

    double edge_sum() const;            // sum of all entries
    double entry_power_sum(int m) const;  // sum of entries^m
    bool is_binary() const;

    // Row/column sums of entries^m; used by kronfit's closed-form row masses.
    std::vector<double> row_sums(int m = 1) const;
    std::vector<double> col_sums(int m = 1) const;

    DenseMatrix to_dense() const;

    bool operator==(const InitiatorMatrix& o) const = default;

private:
    int n1_ = 0;
    std::vector<double> entries_;
};

// Shared initiator text format: first line n1, then n1 rows of n1 reals;
// '#' starts a comment line.
InitiatorMatrix load_initiator(const std::string& path);
InitiatorMatrix parse_initiator(std::istream& in, const std::string& origin);
// Inline syntax "a b; c d" (rows separated by ';').
InitiatorMatrix parse_initiator_inline(const std::string& text);
void save_initiator(const InitiatorMatrix& m, const std::string& path);

}  // namespace kron
