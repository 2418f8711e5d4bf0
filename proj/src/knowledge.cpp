#include "pathcon/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathcon {

namespace {

constexpr double kClamp = 1e-12;

double clamp_probability(double p) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        // Values at the boundary are clamped; anything else is rejected.
        if (!std::isfinite(p) || p < 0.0 || p > 1.0)
            throw std::invalid_argument("probability must lie in [0, 1]");
    }
    return std::clamp(p, kClamp, 1.0 - kClamp);
}

}  // namespace

std::pair<double, double> weights_from_belief(double p) {
    double q = clamp_probability(p);
    return {std::log(q), std::log(1.0 - q)};
}

std::pair<double, double> weights_from_pvalue(double pv) {
    double q = clamp_probability(pv);
    return {std::log(1.0 - q), std::log(q)};
}

}  // namespace pathcon
