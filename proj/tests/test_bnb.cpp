#include <doctest.h>

#include <cmath>
#include <limits>

#include "pathcon/bench.hpp"
#include "pathcon/bnb.hpp"
#include "pathcon/classbuild.hpp"
#include "testutil.hpp"

using namespace pathcon;
using namespace pathcon::test;

namespace {

// Best leaf score by enumerating every class member of p.
double oracle_best_score(const MixedGraph& p, const std::vector<WeightedConstraint>& k,
                         const MixedGraph* true_mag) {
    std::vector<MixedGraph> members =
        true_mag ? oracle_pag_completions(p, *true_mag) : oracle_pdag_completions(p);
    REQUIRE(!members.empty());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& m : members) {
        double s = 0.0;
        for (const auto& w : k)
            s += oracle_satisfies(m, w.constraint) ? w.utility : w.cost;
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

TEST_CASE("score arithmetic") {
    std::vector<WeightedConstraint> k;
    for (int i = 0; i < 5; ++i) k.push_back({{0, 1, Sign::Positive}, 1.0, 0.0});
    CHECK(score({0, 1, 2, 3}, k) == doctest::Approx(4.0));
    CHECK(score({}, k) == doctest::Approx(0.0));

    std::vector<WeightedConstraint> w{{{0, 1, Sign::Positive}, std::log(0.9), std::log(0.1)}};
    CHECK(score({0}, w) == doctest::Approx(std::log(0.9)));
    CHECK(score({}, w) == doctest::Approx(std::log(0.1)));
}

TEST_CASE("score bound") {
    std::vector<WeightedConstraint> k;
    for (int i = 0; i < 4; ++i) k.push_back({{0, 1, Sign::Positive}, 1.0, 0.0});

    ScoreState nothing;
    nothing.remaining = {0, 1, 2, 3};
    CHECK(score_bound(nothing, k) == doctest::Approx(4.0));

    ScoreState leaf;
    leaf.satisfied = {0, 2};
    leaf.violated = {1, 3};
    CHECK(score_bound(leaf, k) == doctest::Approx(score({0, 2}, k)));
}

TEST_CASE("score bound dominates every leaf in the subtree") {
    std::mt19937_64 rng(616);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = random_dag(5, 0.45, rng);
        auto p = dag_to_cpdag(d);
        std::vector<WeightedConstraint> k;
        std::uniform_int_distribution<int> v(0, 4);
        std::uniform_real_distribution<double> wgt(0.0, 2.0);
        for (int i = 0; i < 4; ++i) {
            int x = v(rng), y = v(rng);
            if (x == y) continue;
            k.push_back({{x, y, i % 2 ? Sign::Positive : Sign::Negative}, wgt(rng), wgt(rng)});
        }
        if (k.empty()) continue;
        auto state = classify_constraints(p, k);
        CHECK(state.satisfied.size() + state.violated.size() + state.remaining.size() ==
              k.size());
        CHECK(score_bound(state, k) >= oracle_best_score(p, k, nullptr) - 1e-9);
    }
}

TEST_CASE("classification examples") {
    auto leaf = G("graph pdag 3\nX Y Z\nX -> Y\nY -> Z\n");
    std::vector<WeightedConstraint> pos{{{0, 2, Sign::Positive}, 1.0, 0.0}};
    std::vector<WeightedConstraint> neg{{{0, 2, Sign::Negative}, 1.0, 0.0}};
    CHECK(classify_constraints(leaf, pos).satisfied == std::vector<int>{0});
    CHECK(classify_constraints(leaf, neg).violated == std::vector<int>{0});

    auto open = G("graph pdag 3\nX Y Z\nX oo Y\nY oo Z\n");
    CHECK(classify_constraints(open, pos).remaining == std::vector<int>{0});
}

TEST_CASE("bnb keeps consistent knowledge whole") {
    auto p = G("graph pdag 3\nX Y Z\nX oo Y\nY oo Z\n");
    std::vector<WeightedConstraint> k{{{0, 2, Sign::Positive}, 1.0, 0.0},
                                      {{1, 2, Sign::Positive}, 1.0, 0.0}};
    auto res = search_bnb(p, k, SearchOptions{SearchMode::Pdag, true, std::nullopt});
    CHECK(res.best_score == doctest::Approx(2.0));
    CHECK(res.best_subset == std::vector<int>{0, 1});
    REQUIRE(res.witness.has_value());
    CHECK(oracle_reachable(*res.witness, 0, 2));
}

TEST_CASE("bnb drops one of two contradictory constraints") {
    auto p = G("graph pdag 3\nX Y Z\nX oo Y\nY oo Z\n");
    std::vector<WeightedConstraint> k{{{0, 2, Sign::Positive}, 1.0, 0.0},
                                      {{0, 2, Sign::Negative}, 1.0, 0.0}};
    auto res = search_bnb(p, k, SearchOptions{SearchMode::Pdag, true, std::nullopt});
    CHECK(res.best_score == doctest::Approx(1.0));
    CHECK(res.best_subset.size() == 1);
}

TEST_CASE("weighted conflict drops the cheaper side") {
    auto p = G("graph pdag 3\nX Y Z\nX oo Y\nY oo Z\n");
    std::vector<WeightedConstraint> k{{{0, 2, Sign::Positive}, 0.2, 0.0},
                                      {{0, 2, Sign::Negative}, 5.0, 0.0}};
    auto res = search_bnb(p, k, SearchOptions{SearchMode::Pdag, true, std::nullopt});
    CHECK(res.best_subset == std::vector<int>{1});
    CHECK(res.best_score == doctest::Approx(5.0));
}

TEST_CASE("bnb matches the leaf enumeration oracle") {
    std::mt19937_64 rng(828);
    std::uniform_real_distribution<double> wgt(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + trial % 3;
        auto d = random_dag(n, 0.45, rng);
        auto p = dag_to_cpdag(d);
        std::vector<WeightedConstraint> k;
        std::uniform_int_distribution<int> v(0, n - 1);
        for (int i = 0; i < 2 + trial % 4; ++i) {
            int x = v(rng), y = v(rng);
            if (x == y) continue;
            k.push_back({{x, y, wgt(rng) < 0.5 ? Sign::Positive : Sign::Negative},
                         wgt(rng), wgt(rng)});
        }
        SearchOptions bounded{SearchMode::Pdag, true, std::nullopt};
        SearchOptions unbounded{SearchMode::Pdag, false, std::nullopt};
        auto res = search_bnb(p, k, bounded);
        auto res2 = search_bnb(p, k, unbounded);
        double expect = oracle_best_score(p, k, nullptr);
        CHECK(res.best_score == doctest::Approx(expect));
        CHECK(res2.best_score == doctest::Approx(res.best_score));
        CHECK(res.best_subset == res2.best_subset);
        CHECK(res.best_score == doctest::Approx(score(res.best_subset, k)));
        REQUIRE(res.witness.has_value());
        for (int i : res.best_subset) CHECK(oracle_satisfies(*res.witness, k[i].constraint));
    }
}

TEST_CASE("cardinality selection with unit weights") {
    std::mt19937_64 rng(929);
    for (int trial = 0; trial < 15; ++trial) {
        auto d = random_dag(5, 0.45, rng);
        auto p = dag_to_cpdag(d);
        std::vector<WeightedConstraint> k;
        std::uniform_int_distribution<int> v(0, 4);
        for (int i = 0; i < 4; ++i) {
            int x = v(rng), y = v(rng);
            if (x != y) k.push_back({{x, y, i % 2 ? Sign::Positive : Sign::Negative}, 1.0, 0.0});
        }
        if (k.empty()) continue;
        auto res = search_bnb(p, k, SearchOptions{SearchMode::Pdag, true, std::nullopt});
        // Brute force the maximum-cardinality consistent subset from leaves.
        auto members = oracle_pdag_completions(p);
        size_t best = 0;
        for (const auto& m : members) {
            size_t cnt = 0;
            for (const auto& w : k)
                if (oracle_satisfies(m, w.constraint)) ++cnt;
            best = std::max(best, cnt);
        }
        CHECK(res.best_subset.size() == best);
    }
}

TEST_CASE("probability weightings") {
    auto [u, c] = weights_from_belief(0.5);
    CHECK(u == doctest::Approx(std::log(0.5)));
    CHECK(c == doctest::Approx(std::log(0.5)));

    auto [u2, c2] = weights_from_pvalue(0.01);
    CHECK(u2 == doctest::Approx(std::log(0.99)));
    CHECK(c2 == doctest::Approx(std::log(0.01)));

    auto [u3, c3] = weights_from_pvalue(0.86);
    CHECK(u3 == doctest::Approx(std::log(0.14)));
    CHECK(c3 == doctest::Approx(std::log(0.86)));

    // Clamped, not infinite.
    auto [u4, c4] = weights_from_belief(1.0);
    CHECK(std::isfinite(u4));
    CHECK(std::isfinite(c4));

    CHECK_THROWS_AS(weights_from_belief(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(weights_from_pvalue(1.5), std::invalid_argument);
}
