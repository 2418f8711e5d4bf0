#include "pathcon/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pathcon/errors.hpp"
#include "pathcon/propagation.hpp"

namespace pathcon {

double score(const std::vector<int>& subset, const std::vector<WeightedConstraint>& k) {
    std::vector<char> in(k.size(), 0);
    for (int i : subset) {
        if (i < 0 || i >= static_cast<int>(k.size()))
            throw std::invalid_argument("subset index out of range");
        in[i] = 1;
    }
    double s = 0.0;
    for (size_t i = 0; i < k.size(); ++i) s += in[i] ? k[i].utility : k[i].cost;
    return s;
}

double score_bound(const ScoreState& state, const std::vector<WeightedConstraint>& k) {
    double s = 0.0;
    for (int i : state.satisfied) s += k[i].utility;
    for (int i : state.violated) s += k[i].cost;
    for (int i : state.remaining) s += std::max(k[i].utility, k[i].cost);
    return s;
}

ScoreState classify_constraints(const MixedGraph& p, const std::vector<WeightedConstraint>& k) {
    ScoreState state;
    for (size_t i = 0; i < k.size(); ++i) {
        const auto& c = k[i].constraint;
        bool directed = has_directed_path(p, c.x, c.y);
        bool possibly = directed || has_possibly_directed_path(p, c.x, c.y);
        int idx = static_cast<int>(i);
        if (c.sign == Sign::Positive) {
            if (directed) state.satisfied.push_back(idx);
            else if (!possibly) state.violated.push_back(idx);
            else state.remaining.push_back(idx);
        } else {
            if (directed) state.violated.push_back(idx);
            else if (!possibly) state.satisfied.push_back(idx);
            else state.remaining.push_back(idx);
        }
    }
    return state;
}

namespace {

struct BnBContext {
    const MixedGraph& input;
    const std::vector<WeightedConstraint>& k;
    const SeparationTable* table;
    const SearchOptions& opts;
    BnBResult& best;
};

void bnb_node(BnBContext& ctx, const MixedGraph& p) {
    ++ctx.best.stats.nodes_visited;
    if (ctx.opts.node_budget && ctx.best.stats.nodes_visited > *ctx.opts.node_budget)
        throw ResourceError("branch-and-bound node budget exhausted",
                            ctx.best.stats.nodes_visited);

    // Structural validity only; constraint violations are priced, not cut.
    std::vector<KnowledgeConstraint> no_k;
    if (!valid(p, ctx.input, no_k, ctx.table, ctx.opts.mode)) return;

    ScoreState state = classify_constraints(p, ctx.k);
    if (ctx.opts.pruning && score_bound(state, ctx.k) <= ctx.best.best_score) return;

    auto circles = p.circle_positions();
    if (circles.empty()) {
        ++ctx.best.stats.leaves_found;
        double s = score(state.satisfied, ctx.k);
        if (s > ctx.best.best_score) {
            ctx.best.best_score = s;
            ctx.best.best_subset = state.satisfied;
            ctx.best.witness = p;
        }
        return;
    }

    auto [x, y] = circles.front();
    auto arrow_child = apply_orientation(p, x, y, Mark::Arrow);
    if (!arrow_child.conflict) bnb_node(ctx, arrow_child.graph);
    auto tail_child = apply_orientation(p, x, y, Mark::Tail);
    if (!tail_child.conflict) bnb_node(ctx, tail_child.graph);
}

}  // namespace

BnBResult search_bnb(const MixedGraph& p, const std::vector<WeightedConstraint>& k,
                     const SearchOptions& opts, const SeparationTable* table) {
    if (opts.mode == SearchMode::Pdag && p.graph_class() != GraphClass::Pdag)
        throw std::invalid_argument("PDAG mode requires a PDAG input");
    if (opts.mode == SearchMode::Pag && p.graph_class() != GraphClass::Pag)
        throw std::invalid_argument("PAG mode requires a PAG input");

    BnBResult res;
    res.best_score = -std::numeric_limits<double>::infinity();
    res.stats.uncertainties = static_cast<int>(p.circle_positions().size());

    SeparationTable local_table;
    if (opts.mode == SearchMode::Pag && table == nullptr) {
        auto ref = reference_completion(p);
        if (!ref) return res;
        local_table = build_separation_table(*ref);
        table = &local_table;
    }

    BnBContext ctx{p, k, table, opts, res};
    bnb_node(ctx, p);
    return res;
}

}  // namespace pathcon
