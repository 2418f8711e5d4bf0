#include "pathcon/classbuild.hpp"

#include <stdexcept>

#include "pathcon/errors.hpp"
#include "pathcon/propagation.hpp"
#include "pathcon/separation.hpp"

namespace pathcon {

MixedGraph dag_to_cpdag(const MixedGraph& d) {
    validate_class(d);
    if (d.graph_class() != GraphClass::Dag)
        throw std::invalid_argument("dag_to_cpdag expects a DAG");
    MixedGraph p(GraphClass::Pdag, d.names());
    for (auto [u, v] : d.edges()) p.add_edge(u, v, Mark::Circle, Mark::Circle);
    for (auto [x, y, z] : unshielded_triples(d)) {
        if (is_collider(d, x, y, z)) {
            p.set_mark(y, x, Mark::Tail);
            p.set_mark(x, y, Mark::Arrow);
            p.set_mark(y, z, Mark::Tail);
            p.set_mark(z, y, Mark::Arrow);
        }
    }
    auto outcome = meek_closure(std::move(p));
    if (outcome.conflict)
        throw InvariantError("Meek closure conflict while building a CPDAG");
    return outcome.graph;
}

bool has_inducing_path(const MixedGraph& d, int a, int b, const std::set<int>& hidden) {
    if (a == b) throw std::invalid_argument("inducing path requires distinct endpoints");
    int n = d.vertex_count();
    std::vector<char> on_path(n, 0);
    // DFS over simple paths, carrying whether the edge we arrived by has an
    // arrowhead at the current vertex; interior vertices must be hidden or
    // colliders, colliders must be ancestors of an endpoint.
    std::function<bool(int, bool)> walk = [&](int v, bool into_v) -> bool {
            for (int w : d.neighbors(v)) {
            if (on_path[w]) continue;
            bool out_arrow = d.mark(w, v) == Mark::Arrow;  // edge v--w into v
            bool collider = into_v && out_arrow;
            if (collider) {
                if (!is_ancestor(d, v, a) && !is_ancestor(d, v, b)) continue;
            } else if (hidden.count(v) == 0) {
                continue;
            }
            if (w == b) return true;
            on_path[w] = 1;
            if (walk(w, d.mark(v, w) == Mark::Arrow)) return true;
            on_path[w] = 0;
        }
        return false;
    };
    if (d.adjacent(a, b)) return true;
    on_path[a] = 1;
    for (int w : d.neighbors(a)) {
        if (w == b) return true;
        on_path[w] = 1;
        if (walk(w, d.mark(a, w) == Mark::Arrow)) return true;
        on_path[w] = 0;
    }
    return false;
}

MixedGraph latent_project(const MixedGraph& d, const LatentSpec& l) {
    validate_class(d);
    if (d.graph_class() != GraphClass::Dag)
        throw std::invalid_argument("latent_project expects a DAG");
    for (int h : l.hidden)
        if (h < 0 || h >= d.vertex_count())
            throw std::invalid_argument("hidden vertex out of range");

    std::vector<int> observed;
    std::vector<std::string> names;
    for (int v = 0; v < d.vertex_count(); ++v) {
        if (l.hidden.count(v) == 0) {
            observed.push_back(v);
            names.push_back(d.name(v));
        }
    }
    MixedGraph m(GraphClass::Mag, names);
    for (size_t i = 0; i < observed.size(); ++i) {
        for (size_t j = i + 1; j < observed.size(); ++j) {
            int a = observed[i], b = observed[j];
            if (!has_inducing_path(d, a, b, l.hidden)) continue;
            if (is_ancestor(d, a, b))
                m.add_edge(static_cast<int>(i), static_cast<int>(j), Mark::Tail, Mark::Arrow);
            else if (is_ancestor(d, b, a))
                m.add_edge(static_cast<int>(i), static_cast<int>(j), Mark::Arrow, Mark::Tail);
            else
                m.add_edge(static_cast<int>(i), static_cast<int>(j), Mark::Arrow, Mark::Arrow);
        }
    }
    auto violations = class_violations(m);
    if (!violations.empty())
        throw InvariantError("latent projection produced an invalid MAG: " + violations.front());
    return m;
}

MixedGraph dag_to_mag(const MixedGraph& d) {
    validate_class(d);
    if (d.graph_class() != GraphClass::Dag)
        throw std::invalid_argument("dag_to_mag expects a DAG");
    MixedGraph m = d;
    m.set_graph_class(GraphClass::Mag);
    return m;
}

void for_each_ancestral_orientation(const MixedGraph& m,
                                    const std::function<void(const MixedGraph&)>& fn,
                                    int max_positions) {
    auto edge_list = m.edges();
    int e = static_cast<int>(edge_list.size());
    if (2 * e > max_positions)
        throw ResourceError("skeleton has " + std::to_string(2 * e) +
                            " endpoint positions, above the enumeration cap of " +
                            std::to_string(max_positions));
    MixedGraph cand(GraphClass::Mag, m.names());
    for (auto [u, v] : edge_list) cand.add_edge(u, v, Mark::Tail, Mark::Arrow);
    std::vector<int> choice(e, 0);
    while (true) {
        for (int i = 0; i < e; ++i) {
            auto [u, v] = edge_list[i];
            switch (choice[i]) {
                case 0:  // u -> v
                    cand.set_mark(v, u, Mark::Tail);
                    cand.set_mark(u, v, Mark::Arrow);
                    break;
                case 1:  // u <- v
                    cand.set_mark(v, u, Mark::Arrow);
                    cand.set_mark(u, v, Mark::Tail);
                    break;
                default:  // u <-> v
                    cand.set_mark(v, u, Mark::Arrow);
                    cand.set_mark(u, v, Mark::Arrow);
                    break;
            }
        }
        if (!has_directed_cycle(cand) && !has_almost_directed_cycle(cand)) fn(cand);
        int i = 0;
        while (i < e && choice[i] == 2) choice[i++] = 0;
        if (i == e) break;
        ++choice[i];
    }
}

MixedGraph mag_to_pag(const MixedGraph& m, int max_positions) {
    validate_class(m);
    if (m.graph_class() != GraphClass::Mag)
        throw std::invalid_argument("mag_to_pag expects a MAG");
    auto sig = separation_signature(m);

    MixedGraph pag = m;
    pag.set_graph_class(GraphClass::Pag);
    for_each_ancestral_orientation(m, [&](const MixedGraph& cand) {
        if (!matches_signature(cand, sig)) return;
        for (auto [u, v] : m.edges()) {
            if (cand.mark(u, v) != m.mark(u, v)) pag.set_mark(u, v, Mark::Circle);
            if (cand.mark(v, u) != m.mark(v, u)) pag.set_mark(v, u, Mark::Circle);
        }
    }, max_positions);
    return pag;
}

}  // namespace pathcon
