#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathcon {

// Malformed input files; `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(std::move(msg)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A configured cap (node budget, enumeration cap) was exceeded.
class ResourceError : public std::runtime_error {
public:
    ResourceError(std::string msg, long long nodes_visited = 0)
        : std::runtime_error(std::move(msg)), nodes_visited_(nodes_visited) {}
    long long nodes_visited() const { return nodes_visited_; }

private:
    long long nodes_visited_;
};

// An internal invariant failed (e.g. a constructed graph is not a valid MAG).
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pathcon
