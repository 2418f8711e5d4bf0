#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pathcon/knowledge.hpp"
#include "pathcon/separation.hpp"

namespace pathcon {

enum class SearchMode : std::uint8_t { Pdag, Pag };

struct SearchOptions {
    SearchMode mode = SearchMode::Pag;
    bool pruning = true;
    std::optional<long long> node_budget;
};

struct SearchStats {
    long long nodes_visited = 0;
    long long leaves_found = 0;
    int uncertainties = 0;
};

struct FoundEntry {
    bool arrow = false;
    bool tail = false;

    bool operator==(const FoundEntry&) const = default;
};

// Per circle position of the input graph: which orientations some consistent
// completion realizes.
using FoundTable = std::map<std::pair<int, int>, FoundEntry>;

// Solid equivalence-class graph plus the dashed knowledge edges.
struct PCGraph {
    MixedGraph solid;
    std::vector<KnowledgeConstraint> dashed;
};

struct IncorporateResult {
    bool sat = false;
    std::optional<PCGraph> graph;
    SearchStats stats;
};

// Validity of a search node: (1) no directed cycle, and in PAG mode no
// almost directed cycle and no unshielded collider absent from the input;
// (2) every positive constraint keeps a possibly directed path and no
// negative constraint has a directed path; (3) in PAG mode, once the graph
// is circle free, its separations match the reference table.
bool valid(const MixedGraph& p, const MixedGraph& input,
           const std::vector<KnowledgeConstraint>& k, const SeparationTable* table,
           SearchMode mode);

// Rule 1: every assigned position already realized, every unassigned
// position realized both ways.
bool prune_rule(const MixedGraph& p, const FoundTable& found);

// Circle position to branch on, preferring positions not yet realized both
// ways; deterministic tie-break by index order.
std::optional<std::pair<int, int>> select_branch_edge(const MixedGraph& p,
                                                      const FoundTable& found);

// Backtracking search over circle orientations (Algorithm 2 style): explores
// both marks per position with forward-checking propagation, records leaf
// marks into `found`. Returns whether a valid consistent completion exists.
bool search(const MixedGraph& p, const MixedGraph& input,
            const std::vector<KnowledgeConstraint>& k, const SeparationTable* table,
            FoundTable& found, const SearchOptions& opts, SearchStats& stats);

// Full pipeline: search, orient unanimously realized marks, attach dashed
// knowledge edges. In PAG mode without an explicit table, the reference MAG
// is the first structurally valid, maximal completion found with no
// constraints.
IncorporateResult find_pc_graph(const MixedGraph& p,
                                const std::vector<KnowledgeConstraint>& k,
                                const SearchOptions& opts,
                                const SeparationTable* table = nullptr);

// First structurally valid and maximal circle-free completion of p under the
// deterministic branch order; the class representative used to build the
// separation table when none is supplied.
std::optional<MixedGraph> reference_completion(const MixedGraph& p);

}  // namespace pathcon
