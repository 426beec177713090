#include "kron/matrix.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "kron/errors.hpp"

namespace kron {

InitiatorMatrix::InitiatorMatrix(int n1, std::vector<double> entries)
    : n1_(n1), entries_(std::move(entries)) {
    if (n1_ < 2) throw DomainError("initiator side length must be >= 2, got " + std::to_string(n1_));
    if (entries_.size() != static_cast<size_t>(n1_) * n1_)
        throw DomainError("initiator needs " + std::to_string(n1_ * n1_) + " entries, got " +
                          std::to_string(entries_.size()));
    for (double v : entries_)
        if (!(v >= 0.0 && v <= 1.0))
            throw DomainError("initiator entry " + std::to_string(v) + " outside [0,1]");
}

void InitiatorMatrix::set(int i, int j, double v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw DomainError("initiator entry " + std::to_string(v) + " outside [0,1]");
    entries_[static_cast<size_t>(i) * n1_ + j] = v;
}

double InitiatorMatrix::edge_sum() const {
    double s = 0.0;
    for (double v : entries_) s += v;
    return s;
}

double InitiatorMatrix::entry_power_sum(int m) const {
    double s = 0.0;
    for (double v : entries_) s += std::pow(v, m);
    return s;
}

bool InitiatorMatrix::is_binary() const {
    for (double v : entries_)
        if (v != 0.0 && v != 1.0) return false;
    return true;
}

std::vector<double> InitiatorMatrix::row_sums(int m) const {
    std::vector<double> out(n1_, 0.0);
    for (int i = 0; i < n1_; ++i)
        for (int j = 0; j < n1_; ++j) out[i] += std::pow(at(i, j), m);
    return out;
}

std::vector<double> InitiatorMatrix::col_sums(int m) const {
    std::vector<double> out(n1_, 0.0);
    for (int i = 0; i < n1_; ++i)
        for (int j = 0; j < n1_; ++j) out[j] += std::pow(at(i, j), m);
    return out;
}

DenseMatrix InitiatorMatrix::to_dense() const {
    DenseMatrix d(n1_, n1_);
    d.values = entries_;
    return d;
}

InitiatorMatrix parse_initiator(std::istream& in, const std::string& origin) {
    std::string line;
    int n1 = -1;
    std::vector<double> entries;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        if (n1 < 0) {
            if (ls >> n1) {
                if (n1 < 2) throw ParseError(origin + ":" + std::to_string(lineno) + ": n1 must be >= 2");
            }
            continue;
        }
        double v;
        while (ls >> v) entries.push_back(v);
    }
    if (n1 < 0) throw ParseError(origin + ": missing initiator size line");
    if (entries.size() != static_cast<size_t>(n1) * n1)
        throw ParseError(origin + ": expected " + std::to_string(n1 * n1) + " entries, found " +
                         std::to_string(entries.size()));
    return InitiatorMatrix(n1, std::move(entries));
}

InitiatorMatrix load_initiator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open initiator file: " + path);
    return parse_initiator(in, path);
}

InitiatorMatrix parse_initiator_inline(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::istringstream rs(row);
        std::vector<double> vals;
        double v;
        while (rs >> v) vals.push_back(v);
        if (!vals.empty()) rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw ParseError("empty inline initiator");
    int n1 = static_cast<int>(rows.size());
    std::vector<double> entries;
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != n1)
            throw ParseError("inline initiator is not square: row has " + std::to_string(r.size()) +
                             " entries, expected " + std::to_string(n1));
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return InitiatorMatrix(n1, std::move(entries));
}

void save_initiator(const InitiatorMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write initiator file: " + path);
    out << "# initiator matrix\n" << m.n1() << "\n";
    out << std::setprecision(17);
    for (int i = 0; i < m.n1(); ++i) {
        for (int j = 0; j < m.n1(); ++j) out << (j ? " " : "") << m.at(i, j);
        out << "\n";
    }
    if (!out) throw IoError("write failure: " + path);
}

}  // namespace kron
