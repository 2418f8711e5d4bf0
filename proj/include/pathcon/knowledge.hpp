#pragma once

#include <string>
#include <vector>

#include "pathcon/graph.hpp"

namespace pathcon {

enum class Sign : std::uint8_t { Positive, Negative };

// "x causes y" (Positive) or "x does not cause y" (Negative), as a
// constraint on directed paths.
struct KnowledgeConstraint {
    int x;
    int y;
    Sign sign;

    bool operator==(const KnowledgeConstraint&) const = default;
};

struct WeightedConstraint {
    KnowledgeConstraint constraint;
    double utility = 1.0;  // reward when satisfied
    double cost = 0.0;     // payoff when violated
};

// Belief weighting: (log p, log(1 - p)); p clamped away from 0 and 1.
std::pair<double, double> weights_from_belief(double p);
// P-value weighting: (log(1 - pv), log(pv)).
std::pair<double, double> weights_from_pvalue(double pv);

}  // namespace pathcon
