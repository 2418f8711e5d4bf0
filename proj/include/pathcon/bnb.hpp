#pragma once

#include <optional>
#include <vector>

#include "pathcon/incorporate.hpp"
#include "pathcon/knowledge.hpp"

namespace pathcon {

// Partition of the constraint indices at a search node.
struct ScoreState {
    std::vector<int> satisfied;
    std::vector<int> violated;
    std::vector<int> remaining;
};

struct BnBResult {
    double best_score;
    std::vector<int> best_subset;
    SearchStats stats;
    std::optional<MixedGraph> witness;  // leaf realizing best_subset
};

// Sc(K', K) = sum of utilities over the subset plus costs over the rest.
double score(const std::vector<int>& subset, const std::vector<WeightedConstraint>& k);

// Upper bound: satisfied utilities + violated costs + max(u, c) over the
// remaining constraints.
double score_bound(const ScoreState& state, const std::vector<WeightedConstraint>& k);

// Positive: satisfied once a directed path exists, violated once no possibly
// directed path remains; negatives mirrored. Circle-free graphs classify
// every constraint.
ScoreState classify_constraints(const MixedGraph& p, const std::vector<WeightedConstraint>& k);

// Branch and bound over circle orientations: structural validity cuts plus
// the score bound against the best leaf so far. Constraint violations do not
// invalidate nodes here; they are priced by the score instead.
BnBResult search_bnb(const MixedGraph& p, const std::vector<WeightedConstraint>& k,
                     const SearchOptions& opts, const SeparationTable* table = nullptr);

}  // namespace pathcon
