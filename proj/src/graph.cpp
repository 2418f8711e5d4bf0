#include "pathcon/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "pathcon/errors.hpp"

namespace pathcon {

const char* to_string(Mark m) {
    switch (m) {
        case Mark::Tail: return "tail";
        case Mark::Arrow: return "arrow";
        case Mark::Circle: return "circle";
    }
    return "?";
}

const char* to_string(GraphClass c) {
    switch (c) {
        case GraphClass::Dag: return "dag";
        case GraphClass::Mag: return "mag";
        case GraphClass::Pdag: return "pdag";
        case GraphClass::Pag: return "pag";
    }
    return "?";
}

std::optional<GraphClass> graph_class_from_string(const std::string& s) {
    if (s == "dag") return GraphClass::Dag;
    if (s == "mag") return GraphClass::Mag;
    if (s == "pdag") return GraphClass::Pdag;
    if (s == "pag") return GraphClass::Pag;
    return std::nullopt;
}

MixedGraph::MixedGraph(GraphClass cls, std::vector<std::string> names)
    : cls_(cls), n_(static_cast<int>(names.size())), names_(std::move(names)) {
    for (int i = 0; i < n_; ++i) {
        auto [it, inserted] = index_.emplace(names_[i], i);
        if (!inserted)
            throw std::invalid_argument("duplicate vertex name: " + names_[i]);
    }
    ends_.assign(static_cast<size_t>(n_) * n_, kAbsent);
}

int MixedGraph::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw std::invalid_argument("unknown vertex: " + name);
    return it->second;
}

std::optional<int> MixedGraph::try_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void MixedGraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex index out of range");
}

void MixedGraph::add_edge(int u, int v, Mark at_u, Mark at_v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self loops are not allowed");
    if (adjacent(u, v))
        throw std::invalid_argument("edge already present: " + names_[u] + " -- " + names_[v]);
    ends_[static_cast<size_t>(v) * n_ + u] = static_cast<std::uint8_t>(at_u);
    ends_[static_cast<size_t>(u) * n_ + v] = static_cast<std::uint8_t>(at_v);
}

void MixedGraph::remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    ends_[static_cast<size_t>(v) * n_ + u] = kAbsent;
    ends_[static_cast<size_t>(u) * n_ + v] = kAbsent;
}

bool MixedGraph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return false;
    return ends_[static_cast<size_t>(u) * n_ + v] != kAbsent;
}

Mark MixedGraph::mark(int other, int at) const {
    if (!adjacent(other, at))
        throw std::invalid_argument("no edge between " + names_[other] + " and " + names_[at]);
    return static_cast<Mark>(ends_[static_cast<size_t>(other) * n_ + at]);
}

void MixedGraph::set_mark(int other, int at, Mark m) {
    if (!adjacent(other, at))
        throw std::invalid_argument("no edge between " + names_[other] + " and " + names_[at]);
    ends_[static_cast<size_t>(other) * n_ + at] = static_cast<std::uint8_t>(m);
}

std::vector<std::pair<int, int>> MixedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (ends_[static_cast<size_t>(u) * n_ + v] != kAbsent) out.emplace_back(u, v);
    return out;
}

std::vector<int> MixedGraph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
        if (u != v && ends_[static_cast<size_t>(u) * n_ + v] != kAbsent) out.push_back(u);
    return out;
}

int MixedGraph::edge_count() const {
    return static_cast<int>(edges().size());
}

std::vector<std::pair<int, int>> MixedGraph::circle_positions() const {
    std::vector<std::pair<int, int>> out;
    for (auto [u, v] : edges()) {
        if (mark(u, v) == Mark::Circle) out.emplace_back(u, v);
        if (mark(v, u) == Mark::Circle) out.emplace_back(v, u);
    }
    return out;
}

bool MixedGraph::operator==(const MixedGraph& o) const {
    return cls_ == o.cls_ && names_ == o.names_ && ends_ == o.ends_;
}

namespace {

bool edge_directed_from(const MixedGraph& g, int u, int v) {
    return g.mark(v, u) == Mark::Tail && g.mark(u, v) == Mark::Arrow;
}

}  // namespace

std::vector<int> directed_reachable(const MixedGraph& g, int x) {
    if (x < 0 || x >= g.vertex_count())
        throw std::invalid_argument("vertex index out of range");
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<int> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (!seen[w] && edge_directed_from(g, v, w)) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

bool is_ancestor(const MixedGraph& g, int x, int y) {
    if (x == y) {
        if (x < 0 || x >= g.vertex_count())
            throw std::invalid_argument("vertex index out of range");
        return true;
    }
    return has_directed_path(g, x, y);
}

bool has_directed_path(const MixedGraph& g, int x, int y) {
    if (y < 0 || y >= g.vertex_count())
        throw std::invalid_argument("vertex index out of range");
    if (x == y) return false;
    auto reach = directed_reachable(g, x);
    return std::find(reach.begin(), reach.end(), y) != reach.end();
}

bool has_possibly_directed_path(const MixedGraph& g, int x, int y) {
    if (x < 0 || x >= g.vertex_count() || y < 0 || y >= g.vertex_count())
        throw std::invalid_argument("vertex index out of range");
    if (x == y) return false;
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<int> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            // The edge must not point back into the vertex it leaves.
            if (g.mark(w, v) == Mark::Arrow) continue;
            if (w == y) return true;
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return false;
}

bool has_directed_cycle(const MixedGraph& g) {
    int n = g.vertex_count();
    // Colors: 0 unvisited, 1 on stack, 2 done.
    std::vector<char> color(n, 0);
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            if (color[v] == 0) {
                color[v] = 1;
                for (int w : g.neighbors(v)) {
                    if (!edge_directed_from(g, v, w)) continue;
                    if (color[w] == 1) return true;
                    if (color[w] == 0) stack.push_back(w);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

bool has_almost_directed_cycle(const MixedGraph& g) {
    for (auto [u, v] : g.edges()) {
        if (g.mark(u, v) == Mark::Arrow && g.mark(v, u) == Mark::Arrow) {
            if (has_directed_path(g, u, v) || has_directed_path(g, v, u)) return true;
        }
    }
    return false;
}

std::vector<std::tuple<int, int, int>> unshielded_triples(const MixedGraph& g) {
    std::vector<std::tuple<int, int, int>> out;
    for (int y = 0; y < g.vertex_count(); ++y) {
        auto nb = g.neighbors(y);
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!g.adjacent(nb[i], nb[j])) out.emplace_back(nb[i], y, nb[j]);
    }
    return out;
}

bool is_collider(const MixedGraph& g, int x, int y, int z) {
    if (!g.adjacent(x, y) || !g.adjacent(y, z))
        throw std::invalid_argument("collider test requires adjacent triple");
    return g.mark(x, y) == Mark::Arrow && g.mark(z, y) == Mark::Arrow;
}

bool is_definite_noncollider(const MixedGraph& g, int x, int y, int z) {
    if (!g.adjacent(x, y) || !g.adjacent(y, z))
        throw std::invalid_argument("non-collider test requires adjacent triple");
    if (g.adjacent(x, z)) return false;
    return g.mark(x, y) == Mark::Tail || g.mark(z, y) == Mark::Tail;
}

std::vector<std::string> class_violations(const MixedGraph& g) {
    std::vector<std::string> out;
    GraphClass c = g.graph_class();
    for (auto [u, v] : g.edges()) {
        Mark mu = g.mark(v, u);
        Mark mv = g.mark(u, v);
        auto ename = g.name(u) + " -- " + g.name(v);
        switch (c) {
            case GraphClass::Dag:
                if (!((mu == Mark::Tail && mv == Mark::Arrow) ||
                      (mu == Mark::Arrow && mv == Mark::Tail)))
                    out.push_back("edge not directed in DAG: " + ename);
                break;
            case GraphClass::Mag:
                if (mu == Mark::Circle || mv == Mark::Circle)
                    out.push_back("circle mark in MAG: " + ename);
                else if (mu == Mark::Tail && mv == Mark::Tail)
                    out.push_back("undirected edge in MAG: " + ename);
                break;
            case GraphClass::Pdag:
                // Edges are either directed or the symmetric circle pair.
                if (!((mu == Mark::Tail && mv == Mark::Arrow) ||
                      (mu == Mark::Arrow && mv == Mark::Tail) ||
                      (mu == Mark::Circle && mv == Mark::Circle)))
                    out.push_back("illegal PDAG edge: " + ename);
                break;
            case GraphClass::Pag:
                if (mu == Mark::Tail && mv == Mark::Tail)
                    out.push_back("undirected edge in PAG: " + ename);
                break;
        }
    }
    if (c == GraphClass::Dag || c == GraphClass::Mag) {
        if (has_directed_cycle(g)) out.push_back("directed cycle");
        if (c == GraphClass::Mag && has_almost_directed_cycle(g))
            out.push_back("almost directed cycle");
    }
    return out;
}

void validate_class(const MixedGraph& g) {
    auto v = class_violations(g);
    if (!v.empty()) throw InvariantError(v.front());
}

}  // namespace pathcon
