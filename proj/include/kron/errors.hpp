#pragma once

#include <stdexcept>
#include <string>

namespace kron {

// Thrown when a requested dense or sampled object exceeds its configured cap.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct BoundsError : std::out_of_range {
    explicit BoundsError(const std::string& msg) : std::out_of_range(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fast generator could not place the requested number of distinct edges.
struct SaturationError : std::runtime_error {
    explicit SaturationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A statistic has no defined value on this input (e.g. no reachable pairs).
struct UndefinedStatError : std::runtime_error {
    explicit UndefinedStatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kron
