#include "pathcon/incorporate.hpp"

#include <functional>
#include <stdexcept>

#include "pathcon/errors.hpp"
#include "pathcon/propagation.hpp"

namespace pathcon {

namespace {

void check_constraints(const MixedGraph& p, const std::vector<KnowledgeConstraint>& k) {
    for (const auto& c : k) {
        if (c.x < 0 || c.x >= p.vertex_count() || c.y < 0 || c.y >= p.vertex_count())
            throw std::invalid_argument("constraint refers to an unknown vertex");
        if (c.x == c.y)
            throw std::invalid_argument("constraint endpoints must differ");
    }
}

// Unshielded colliders may only appear where the input already has them;
// members of the input's class all share the input's oriented colliders.
bool colliders_preserved(const MixedGraph& p, const MixedGraph& input) {
    for (auto [x, y, z] : unshielded_triples(p)) {
        if (p.mark(x, y) == Mark::Arrow && p.mark(z, y) == Mark::Arrow) {
            if (input.mark(x, y) != Mark::Arrow || input.mark(z, y) != Mark::Arrow)
                return false;
        }
    }
    return true;
}

}  // namespace

bool valid(const MixedGraph& p, const MixedGraph& input,
           const std::vector<KnowledgeConstraint>& k, const SeparationTable* table,
           SearchMode mode) {
    // (1) structural validity
    if (has_directed_cycle(p)) return false;
    if (mode == SearchMode::Pag && has_almost_directed_cycle(p)) return false;
    if (!colliders_preserved(p, input)) return false;

    // (2) no constraint is violated (sound over-approximation at interior
    // nodes; exact once circle free)
    for (const auto& c : k) {
        if (c.sign == Sign::Positive) {
            if (!has_possibly_directed_path(p, c.x, c.y)) return false;
        } else {
            if (has_directed_path(p, c.x, c.y)) return false;
        }
    }

    // (3) separations, only at circle-free nodes in PAG mode
    if (mode == SearchMode::Pag && table != nullptr && p.circle_positions().empty()) {
        if (!separations_preserved(*table, p)) return false;
    }
    return true;
}

bool prune_rule(const MixedGraph& p, const FoundTable& found) {
    for (const auto& [pos, entry] : found) {
        Mark m = p.mark(pos.first, pos.second);
        switch (m) {
            case Mark::Circle:
                if (!entry.arrow || !entry.tail) return false;
                break;
            case Mark::Arrow:
                if (!entry.arrow) return false;
                break;
            case Mark::Tail:
                if (!entry.tail) return false;
                break;
        }
    }
    return true;
}

std::optional<std::pair<int, int>> select_branch_edge(const MixedGraph& p,
                                                      const FoundTable& found) {
    std::optional<std::pair<int, int>> fallback;
    for (const auto& [pos, entry] : found) {
        if (p.mark(pos.first, pos.second) != Mark::Circle) continue;
        if (!entry.arrow || !entry.tail) return pos;
        if (!fallback) fallback = pos;
    }
    return fallback;
}

namespace {

struct SearchContext {
    const MixedGraph& input;
    const std::vector<KnowledgeConstraint>& k;
    const SeparationTable* table;
    const SearchOptions& opts;
    FoundTable& found;
    SearchStats& stats;
};

bool search_node(SearchContext& ctx, const MixedGraph& p) {
    ++ctx.stats.nodes_visited;
    if (ctx.opts.node_budget && ctx.stats.nodes_visited > *ctx.opts.node_budget)
        throw ResourceError("search node budget exhausted", ctx.stats.nodes_visited);

    if (!valid(p, ctx.input, ctx.k, ctx.table, ctx.opts.mode)) return false;
    if (ctx.opts.pruning && prune_rule(p, ctx.found)) return true;

    auto pos = select_branch_edge(p, ctx.found);
    if (!pos) {
        // Circle-free leaf; validity (including the separation check in PAG
        // mode) already passed.
        for (auto& [key, entry] : ctx.found) {
            Mark m = p.mark(key.first, key.second);
            if (m == Mark::Arrow) entry.arrow = true;
            if (m == Mark::Tail) entry.tail = true;
        }
        ++ctx.stats.leaves_found;
        return true;
    }

    auto [x, y] = *pos;
    bool sat1 = false, sat2 = false;
    auto arrow_child = apply_orientation(p, x, y, Mark::Arrow);
    if (!arrow_child.conflict) sat1 = search_node(ctx, arrow_child.graph);
    auto tail_child = apply_orientation(p, x, y, Mark::Tail);
    if (!tail_child.conflict) sat2 = search_node(ctx, tail_child.graph);
    return sat1 || sat2;
}

}  // namespace

bool search(const MixedGraph& p, const MixedGraph& input,
            const std::vector<KnowledgeConstraint>& k, const SeparationTable* table,
            FoundTable& found, const SearchOptions& opts, SearchStats& stats) {
    stats.uncertainties = static_cast<int>(input.circle_positions().size());
    SearchContext ctx{input, k, table, opts, found, stats};
    return search_node(ctx, p);
}

std::optional<MixedGraph> reference_completion(const MixedGraph& p) {
    std::optional<MixedGraph> result;
    std::vector<KnowledgeConstraint> no_k;
    std::function<bool(const MixedGraph&)> walk = [&](const MixedGraph& g) -> bool {
        if (!valid(g, p, no_k, nullptr, SearchMode::Pag)) return false;
        auto circles = g.circle_positions();
        if (circles.empty()) {
            MixedGraph leaf = g;
            leaf.set_graph_class(GraphClass::Mag);
            if (!class_violations(leaf).empty()) return false;
            if (!is_maximal_mag(leaf)) return false;
            result = std::move(leaf);
            return true;
        }
        auto [x, y] = circles.front();
        auto arrow_child = apply_orientation(g, x, y, Mark::Arrow);
        if (!arrow_child.conflict && walk(arrow_child.graph)) return true;
        auto tail_child = apply_orientation(g, x, y, Mark::Tail);
        if (!tail_child.conflict && walk(tail_child.graph)) return true;
        return false;
    };
    walk(p);
    return result;
}

IncorporateResult find_pc_graph(const MixedGraph& p,
                                const std::vector<KnowledgeConstraint>& k,
                                const SearchOptions& opts,
                                const SeparationTable* table) {
    if (opts.mode == SearchMode::Pdag && p.graph_class() != GraphClass::Pdag)
        throw std::invalid_argument("PDAG mode requires a PDAG input");
    if (opts.mode == SearchMode::Pag && p.graph_class() != GraphClass::Pag)
        throw std::invalid_argument("PAG mode requires a PAG input");
    check_constraints(p, k);

    IncorporateResult res;
    res.stats.uncertainties = static_cast<int>(p.circle_positions().size());

    SeparationTable local_table;
    if (opts.mode == SearchMode::Pag && table == nullptr) {
        auto ref = reference_completion(p);
        if (!ref) return res;  // the class is empty: unsatisfiable
        local_table = build_separation_table(*ref);
        table = &local_table;
    }

    FoundTable found;
    for (auto pos : p.circle_positions()) found[pos] = FoundEntry{};

    res.sat = search(p, p, k, table, found, opts, res.stats);
    if (!res.sat) return res;

    MixedGraph solid = p;
    for (const auto& [pos, entry] : found) {
        if (entry.arrow && !entry.tail) solid.set_mark(pos.first, pos.second, Mark::Arrow);
        else if (entry.tail && !entry.arrow) solid.set_mark(pos.first, pos.second, Mark::Tail);
    }

    PCGraph pc{std::move(solid), {}};
    for (const auto& c : k) {
        if (c.sign == Sign::Positive) {
            if (!has_directed_path(pc.solid, c.x, c.y)) pc.dashed.push_back(c);
        } else {
            // Evaluated on the input: the dashed edge records that the
            // constraint did restrict the class, even when the surviving
            // orientations now entail it.
            if (has_possibly_directed_path(p, c.x, c.y)) pc.dashed.push_back(c);
        }
    }
    res.graph = std::move(pc);
    return res;
}

}  // namespace pathcon
