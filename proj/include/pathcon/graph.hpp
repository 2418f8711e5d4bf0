#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace pathcon {

// Edge-endpoint mark. A directed edge u -> v carries Tail at u and Arrow at v;
// a bi-directed edge carries Arrow at both ends; Circle marks an undecided
// endpoint in an equivalence-class graph.
enum class Mark : std::uint8_t { Tail, Arrow, Circle };

enum class GraphClass : std::uint8_t { Dag, Mag, Pdag, Pag };

const char* to_string(Mark m);
const char* to_string(GraphClass c);
std::optional<GraphClass> graph_class_from_string(const std::string& s);

// Mixed graph over named vertices with per-endpoint marks. The single
// representation for DAGs, MAGs, PDAGs and PAGs; at most one edge per vertex
// pair, no self loops. Vertices keep insertion order, which fixes iteration
// and serialization order.
class MixedGraph {
public:
    MixedGraph() : cls_(GraphClass::Pag), n_(0) {}
    MixedGraph(GraphClass cls, std::vector<std::string> names);

    GraphClass graph_class() const { return cls_; }
    void set_graph_class(GraphClass c) { cls_ = c; }

    int vertex_count() const { return n_; }
    const std::string& name(int v) const { return names_.at(v); }
    const std::vector<std::string>& names() const { return names_; }
    // Throws std::invalid_argument for unknown names.
    int index(const std::string& name) const;
    std::optional<int> try_index(const std::string& name) const;

    void add_edge(int u, int v, Mark at_u, Mark at_v);
    void remove_edge(int u, int v);
    bool adjacent(int u, int v) const;
    // Mark at `at` on the edge between `other` and `at`; edge must exist.
    Mark mark(int other, int at) const;
    void set_mark(int other, int at, Mark m);

    // Edges as (u, v) with u < v, in index order.
    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> neighbors(int v) const;
    int edge_count() const;

    // Endpoint positions (x, y) currently marked Circle (mark at y on x--y).
    std::vector<std::pair<int, int>> circle_positions() const;

    bool operator==(const MixedGraph& o) const;

private:
    void check_vertex(int v) const;

    GraphClass cls_;
    int n_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    // ends_[u * n_ + v] = mark at v on edge u--v, or kAbsent.
    std::vector<std::uint8_t> ends_;
    static constexpr std::uint8_t kAbsent = 0xff;
};

// Vertices reachable from x by directed paths (x -> ... -> y), including x
// itself; the set of y with is_ancestor(g, x, y) true.
std::vector<int> directed_reachable(const MixedGraph& g, int x);
// x == y, or a directed path x -> ... -> y exists.
bool is_ancestor(const MixedGraph& g, int x, int y);
// Strict: requires x != y and a path of fully directed edges.
bool has_directed_path(const MixedGraph& g, int x, int y);
// Local criterion: a path where no edge points back into the vertex it
// leaves (mark at the leaving endpoint is not Arrow). Over-approximates the
// quantification over circle completions on partially oriented graphs.
bool has_possibly_directed_path(const MixedGraph& g, int x, int y);

bool has_directed_cycle(const MixedGraph& g);
// An edge a <-> b where one endpoint is an ancestor of the other.
bool has_almost_directed_cycle(const MixedGraph& g);

// Triples (x, y, z), x < z, with x--y and y--z adjacent and x, z not adjacent.
std::vector<std::tuple<int, int, int>> unshielded_triples(const MixedGraph& g);
// Both marks at y are Arrow; x--y and y--z must be edges.
bool is_collider(const MixedGraph& g, int x, int y, int z);
// x, z not adjacent and at least one mark at y is Tail.
bool is_definite_noncollider(const MixedGraph& g, int x, int y, int z);

// Class legality: mark constraints plus (a)cyclicity requirements. Throws
// InvariantError with a description of the first violation.
void validate_class(const MixedGraph& g);
// Non-throwing variant; returns the violations found.
std::vector<std::string> class_violations(const MixedGraph& g);

}  // namespace pathcon
