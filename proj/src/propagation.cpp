#include "pathcon/propagation.hpp"

#include <stdexcept>

namespace pathcon {

namespace {

struct Editor {
    MixedGraph& g;
    PropagationOutcome& out;

    // Sets the mark at y on edge x--y; records the assignment. A no-op when
    // the mark already holds; flags a conflict when a different non-circle
    // mark is in place.
    bool set(int x, int y, Mark m) {
        Mark cur = g.mark(x, y);
        if (cur == m) return true;
        if (cur != Mark::Circle) {
            out.applied.push_back({x, y, m});
            out.conflict = true;
            return false;
        }
        g.set_mark(x, y, m);
        out.applied.push_back({x, y, m});
        return true;
    }
};

bool directed(const MixedGraph& g, int a, int b) {
    return g.adjacent(a, b) && g.mark(b, a) == Mark::Tail && g.mark(a, b) == Mark::Arrow;
}

bool undirected(const MixedGraph& g, int a, int b) {
    return g.adjacent(a, b) && g.mark(b, a) == Mark::Circle && g.mark(a, b) == Mark::Circle;
}

// Orient a -> b in a PDAG.
bool orient_pdag(Editor& ed, int a, int b) {
    return ed.set(a, b, Mark::Arrow) && ed.set(b, a, Mark::Tail);
}

// Applies the first firing Meek rule, in index order; returns whether one
// fired. On conflict returns false with the conflict flag set.
bool meek_step(Editor& ed) {
    const MixedGraph& g = ed.g;
    int n = g.vertex_count();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (b == a || !undirected(g, a, b)) continue;
            // R1: c -> a, a -- b, c and b non-adjacent.
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                if (directed(g, c, a) && !g.adjacent(c, b)) {
                    orient_pdag(ed, a, b);
                    return true;
                }
            }
            // R2: a -> c -> b with a -- b.
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                if (directed(g, a, c) && directed(g, c, b)) {
                    orient_pdag(ed, a, b);
                    return true;
                }
            }
            // R3: a -- c -> b and a -- d -> b, c and d non-adjacent.
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b || !undirected(g, a, c) || !directed(g, c, b)) continue;
                for (int d = c + 1; d < n; ++d) {
                    if (d == a || d == b || !undirected(g, a, d) || !directed(g, d, b)) continue;
                    if (!g.adjacent(c, d)) {
                        orient_pdag(ed, a, b);
                        return true;
                    }
                }
            }
            // R4: a -- c (or c -> a), c -> d? The chain form: c -> d -> b with
            // a adjacent to c and b, c non-adjacent.
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                if (!(undirected(g, a, c) || directed(g, c, a))) continue;
                if (g.adjacent(c, b)) continue;
                for (int d = 0; d < n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    if (directed(g, c, d) && directed(g, d, b)) {
                        orient_pdag(ed, a, b);
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

// Applies the first firing FCI rule (R1-R3), in index order.
bool fci_step(Editor& ed) {
    const MixedGraph& g = ed.g;
    int n = g.vertex_count();
    // R1: a *-> b o-* c, a and c non-adjacent  =>  b -> c.
    for (int b = 0; b < n; ++b) {
        for (int a = 0; a < n; ++a) {
            if (a == b || !g.adjacent(a, b) || g.mark(a, b) != Mark::Arrow) continue;
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b || !g.adjacent(b, c) || g.adjacent(a, c)) continue;
                if (g.mark(c, b) != Mark::Circle) continue;
                if (!ed.set(c, b, Mark::Tail)) return false;
                if (!ed.set(b, c, Mark::Arrow)) return false;
                return true;
            }
        }
    }
    // R2: (a -> b *-> c or a *-> b -> c) with a *-o c  =>  a *-> c.
    for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) {
            if (c == a || !g.adjacent(a, c) || g.mark(a, c) != Mark::Circle) continue;
            for (int b = 0; b < n; ++b) {
                if (b == a || b == c || !g.adjacent(a, b) || !g.adjacent(b, c)) continue;
                bool first = directed(g, a, b) && g.mark(b, c) == Mark::Arrow;
                bool second = g.mark(a, b) == Mark::Arrow && directed(g, b, c);
                if (first || second) {
                    if (!ed.set(a, c, Mark::Arrow)) return false;
                    return true;
                }
            }
        }
    }
    // R3: a *-> b <-* c, a *-o d o-* c, a and c non-adjacent, d *-o b
    //  =>  d *-> b.
    for (int b = 0; b < n; ++b) {
        for (int d = 0; d < n; ++d) {
            if (d == b || !g.adjacent(d, b) || g.mark(d, b) != Mark::Circle) continue;
            for (int a = 0; a < n; ++a) {
                if (a == b || a == d) continue;
                if (!g.adjacent(a, b) || g.mark(a, b) != Mark::Arrow) continue;
                if (!g.adjacent(a, d) || g.mark(a, d) != Mark::Circle) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == a || c == b || c == d || g.adjacent(a, c)) continue;
                    if (!g.adjacent(c, b) || g.mark(c, b) != Mark::Arrow) continue;
                    if (!g.adjacent(c, d) || g.mark(c, d) != Mark::Circle) continue;
                    if (!ed.set(d, b, Mark::Arrow)) return false;
                    return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

PropagationOutcome meek_closure(MixedGraph p) {
    PropagationOutcome out{std::move(p)};
    Editor ed{out.graph, out};
    while (meek_step(ed)) {
        if (out.conflict) break;
    }
    return out;
}

PropagationOutcome fci_closure(MixedGraph p) {
    PropagationOutcome out{std::move(p)};
    Editor ed{out.graph, out};
    while (fci_step(ed)) {
        if (out.conflict) break;
    }
    return out;
}

PropagationOutcome apply_orientation(const MixedGraph& p, int x, int y, Mark m) {
    if (m == Mark::Circle)
        throw std::invalid_argument("cannot assign a circle mark");
    if (p.mark(x, y) != Mark::Circle)
        throw std::invalid_argument("mark at " + p.name(y) + " on " + p.name(x) + " -- " +
                                    p.name(y) + " is already determined");
    PropagationOutcome out{p};
    Editor ed{out.graph, out};
    bool pdag = p.graph_class() == GraphClass::Pdag || p.graph_class() == GraphClass::Dag;
    if (pdag) {
        // A PDAG edge is directed or undirected; the decision fixes both ends.
        ed.set(x, y, m);
        if (!out.conflict) ed.set(y, x, m == Mark::Arrow ? Mark::Tail : Mark::Arrow);
    } else {
        ed.set(x, y, m);
        // No undirected edges in the class: a tail forces the opposite arrow.
        if (!out.conflict && m == Mark::Tail && out.graph.mark(y, x) == Mark::Circle)
            ed.set(y, x, Mark::Arrow);
    }
    if (out.conflict) return out;
    while (pdag ? meek_step(ed) : fci_step(ed)) {
        if (out.conflict) break;
    }
    return out;
}

}  // namespace pathcon
