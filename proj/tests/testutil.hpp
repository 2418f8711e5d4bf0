#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pathcon/graph.hpp"
#include "pathcon/io.hpp"

namespace pathcon::test {

// Fixture shorthand: build a graph from the text format.
inline MixedGraph G(const std::string& text) { return parse_graph_document(text).graph; }

inline std::vector<std::string> default_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
    return names;
}

// Random DAG over A..: uniform order, independent forward edges.
inline MixedGraph random_dag(int n, double density, std::mt19937_64& rng) {
    MixedGraph d(GraphClass::Dag, default_names(n));
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < density) d.add_edge(order[i], order[j], Mark::Tail, Mark::Arrow);
    return d;
}

// Random maximal ancestral graph by rejection: random skeleton, random
// {->, <-, <->} orientation, keep ancestral graphs whose missing edges are
// all separable (oracle-checked maximality).
inline MixedGraph random_mag(int n, double density, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 2);
    for (;;) {
        MixedGraph m(GraphClass::Mag, default_names(n));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                if (coin(rng) >= density) continue;
                switch (pick(rng)) {
                    case 0: m.add_edge(u, v, Mark::Tail, Mark::Arrow); break;
                    case 1: m.add_edge(u, v, Mark::Arrow, Mark::Tail); break;
                    default: m.add_edge(u, v, Mark::Arrow, Mark::Arrow); break;
                }
            }
        bool cyclic = false;
        for (int u = 0; u < n && !cyclic; ++u)
            for (int v = 0; v < n && !cyclic; ++v)
                if (u != v && oracle_reachable(m, u, v) && oracle_reachable(m, v, u))
                    cyclic = true;
        if (cyclic) continue;
        bool almost = false;
        for (auto [u, v] : m.edges())
            if (m.mark(v, u) == Mark::Arrow && m.mark(u, v) == Mark::Arrow)
                if (oracle_reachable(m, u, v) || oracle_reachable(m, v, u)) almost = true;
        if (almost) continue;
        bool maximal = true;
        for (int a = 0; a < n && maximal; ++a) {
            for (int b = a + 1; b < n && maximal; ++b) {
                if (m.adjacent(a, b)) continue;
                std::vector<int> rest;
                for (int v = 0; v < n; ++v)
                    if (v != a && v != b) rest.push_back(v);
                bool separable = false;
                for (std::uint64_t bits = 0; bits < (1ull << rest.size()) && !separable;
                     ++bits) {
                    std::vector<int> z;
                    for (size_t i = 0; i < rest.size(); ++i)
                        if (bits & (1ull << i)) z.push_back(rest[i]);
                    if (oracle_m_separated(m, a, b, z)) separable = true;
                }
                if (!separable) maximal = false;
            }
        }
        if (maximal) return m;
    }
}

}  // namespace pathcon::test
