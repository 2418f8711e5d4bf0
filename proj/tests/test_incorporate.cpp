#include <doctest.h>

#include "pathcon/bench.hpp"
#include "pathcon/classbuild.hpp"
#include "pathcon/errors.hpp"
#include "pathcon/incorporate.hpp"
#include "testutil.hpp"

using namespace pathcon;
using namespace pathcon::test;

namespace {

FoundTable fresh_table(const MixedGraph& p) {
    FoundTable t;
    for (auto pos : p.circle_positions()) t[pos] = FoundEntry{};
    return t;
}

// Brute-force expected result: intersect the valid class members of p that
// satisfy every constraint. PAG mode filters against a known true MAG.
std::optional<MixedGraph> oracle_solid(const MixedGraph& p,
                                       const std::vector<KnowledgeConstraint>& k,
                                       const MixedGraph* true_mag) {
    std::vector<MixedGraph> members =
        true_mag ? oracle_pag_completions(p, *true_mag) : oracle_pdag_completions(p);
    std::vector<MixedGraph> keep;
    for (const auto& m : members) {
        bool ok = true;
        for (const auto& c : k)
            if (!oracle_satisfies(m, c)) ok = false;
        if (ok) keep.push_back(m);
    }
    if (keep.empty()) return std::nullopt;
    return intersect_marks(keep, p.graph_class());
}

}  // namespace

TEST_CASE("valid examples") {
    auto chain = G("graph pag 3\nX Y Z\nX oo Y\nY oo Z\n");
    CHECK(valid(chain, chain, {{0, 2, Sign::Positive}}, nullptr, SearchMode::Pag));

    auto blocked = G("graph pag 3\nX Y Z\nY -> X\nY oo Z\n");
    CHECK(!valid(blocked, blocked, {{0, 2, Sign::Positive}}, nullptr, SearchMode::Pag));

    // Condition 3: a leaf whose separations differ from the reference fails.
    auto ref = G("graph mag 3\nX Y Z\nX -> Y\nY -> Z\n");
    auto table = build_separation_table(ref);
    auto coll = G("graph pag 3\nX Y Z\nX -> Y\nZ -> Y\n");
    CHECK(!valid(coll, mag_to_pag(ref), {}, &table, SearchMode::Pag));
    auto rev = G("graph pag 3\nX Y Z\nY -> X\nZ -> Y\n");
    CHECK(valid(rev, mag_to_pag(ref), {}, &table, SearchMode::Pag));
}

TEST_CASE("prune rule") {
    auto p = G("graph pag 3\nX Y Z\nX oo Y\nY oo Z\n");
    auto found = fresh_table(p);
    CHECK(!prune_rule(p, found));
    for (auto& [pos, entry] : found) entry = FoundEntry{true, true};
    CHECK(prune_rule(p, found));
    found.begin()->second.tail = false;
    CHECK(!prune_rule(p, found));
}

TEST_CASE("branch selection") {
    auto none = G("graph pag 2\nA B\nA -> B\n");
    CHECK(!select_branch_edge(none, {}).has_value());

    auto p = G("graph pag 3\nA B C\nA o> B\nB o> C\n");
    FoundTable found = fresh_table(p);
    found[{1, 0}] = FoundEntry{true, true};  // circle at A fully found
    auto pick = select_branch_edge(p, found);
    REQUIRE(pick.has_value());
    CHECK(*pick == std::pair<int, int>{2, 1});  // prefer the unfinished one
}

TEST_CASE("search on the worked 3-chain") {
    auto p = G("graph pag 3\nX Y Z\nX oo Y\nY oo Z\n");

    SUBCASE("positive constraint pins the chain") {
        auto found = fresh_table(p);
        SearchStats stats;
        bool sat = search(p, p, {{0, 2, Sign::Positive}}, nullptr, found,
                          SearchOptions{SearchMode::Pag, true, std::nullopt}, stats);
        CHECK(sat);
        // Only X -> Y -> Z satisfies X => Z within the class.
        CHECK(found.at({1, 0}) .tail);
        CHECK(!found.at({1, 0}).arrow);
        CHECK(found.at({0, 1}).arrow);
        CHECK(!found.at({0, 1}).tail);
        CHECK(found.at({2, 1}).tail);
        CHECK(!found.at({2, 1}).arrow);
        CHECK(found.at({1, 2}).arrow);
        CHECK(!found.at({1, 2}).tail);
    }

    SUBCASE("empty knowledge realizes every mark") {
        auto found = fresh_table(p);
        SearchStats stats;
        bool sat = search(p, p, {}, nullptr, found,
                          SearchOptions{SearchMode::Pag, false, std::nullopt}, stats);
        CHECK(sat);
        for (auto& [pos, entry] : found) {
            CHECK(entry.arrow);
            CHECK(entry.tail);
        }
        CHECK(stats.uncertainties == 4);
        CHECK(stats.nodes_visited >= 1);
    }
}

TEST_CASE("find_pc_graph on the worked 3-chain") {
    auto p = G("graph pag 3\nX Y Z\nX oo Y\nY oo Z\n");

    SUBCASE("positive") {
        auto res = find_pc_graph(p, {{0, 2, Sign::Positive}},
                                 SearchOptions{SearchMode::Pag, true, std::nullopt});
        REQUIRE(res.sat);
        const auto& s = res.graph->solid;
        CHECK(s.mark(1, 0) == Mark::Tail);
        CHECK(s.mark(0, 1) == Mark::Arrow);
        CHECK(s.mark(2, 1) == Mark::Tail);
        CHECK(s.mark(1, 2) == Mark::Arrow);
        CHECK(s.circle_positions().empty());
        CHECK(res.graph->dashed.empty());  // the directed path exists
    }

    SUBCASE("negative") {
        auto res = find_pc_graph(p, {{0, 2, Sign::Negative}},
                                 SearchOptions{SearchMode::Pag, true, std::nullopt});
        REQUIRE(res.sat);
        const auto& s = res.graph->solid;
        // X <-o Y o-o Z: the only invariant mark is the arrow at X.
        CHECK(s.mark(1, 0) == Mark::Arrow);
        CHECK(s.mark(0, 1) == Mark::Circle);
        CHECK(s.mark(2, 1) == Mark::Circle);
        CHECK(s.mark(1, 2) == Mark::Circle);
        REQUIRE(res.graph->dashed.size() == 1);
        CHECK(res.graph->dashed[0] == KnowledgeConstraint{0, 2, Sign::Negative});
    }

    SUBCASE("empty knowledge is the identity") {
        auto res = find_pc_graph(p, {}, SearchOptions{SearchMode::Pag, true, std::nullopt});
        REQUIRE(res.sat);
        CHECK(res.graph->solid == p);
        CHECK(res.graph->dashed.empty());
    }

    SUBCASE("contradictory constraints are unsatisfiable") {
        auto res = find_pc_graph(p, {{0, 2, Sign::Positive}, {0, 2, Sign::Negative}},
                                 SearchOptions{SearchMode::Pag, true, std::nullopt});
        CHECK(!res.sat);
        CHECK(!res.graph.has_value());
    }
}

TEST_CASE("mode must match the graph class") {
    auto p = G("graph pag 3\nX Y Z\nX oo Y\nY oo Z\n");
    CHECK_THROWS_AS(
        find_pc_graph(p, {}, SearchOptions{SearchMode::Pdag, true, std::nullopt}),
        std::invalid_argument);
}

TEST_CASE("node budget raises a resource error") {
    auto p = G("graph pdag 4\nA B C D\nA oo B\nB oo C\nC oo D\nD oo A\n");
    CHECK_THROWS_AS(find_pc_graph(p, {{0, 2, Sign::Positive}},
                                  SearchOptions{SearchMode::Pdag, true, 2}),
                    ResourceError);
}

TEST_CASE("pdag oracle equivalence on random instances") {
    std::mt19937_64 rng(111);
    int nonempty = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto d = random_dag(5 + trial % 3, 0.4, rng);
        auto p = dag_to_cpdag(d);
        bool truncated = false;
        auto k = sample_constraints(d, p, 1 + trial % 3, rng, &truncated);
        if (k.empty()) continue;
        ++nonempty;
        SearchOptions opts{SearchMode::Pdag, true, std::nullopt};
        auto res = find_pc_graph(p, k, opts);
        auto expect = oracle_solid(p, k, nullptr);
        REQUIRE(res.sat == expect.has_value());
        if (expect) CHECK(res.graph->solid == *expect);
    }
    CHECK(nonempty > 20);
}

TEST_CASE("pag oracle equivalence on random instances") {
    std::mt19937_64 rng(222);
    int nonempty = 0;
    for (int trial = 0; trial < 25; ++trial) {
        auto d = random_dag(6, 0.4, rng);
        LatentSpec l;
        l.hidden = {trial % 6};
        auto mag = latent_project(d, l);
        if (2 * mag.edge_count() > 16) continue;
        auto p = mag_to_pag(mag);
        auto table = build_separation_table(mag);
        bool truncated = false;
        auto k = sample_constraints(mag, p, 1 + trial % 2, rng, &truncated);
        if (k.empty()) continue;
        ++nonempty;
        SearchOptions opts{SearchMode::Pag, true, std::nullopt};
        auto res = find_pc_graph(p, k, opts, &table);
        auto expect = oracle_solid(p, k, &mag);
        REQUIRE(res.sat == expect.has_value());
        if (expect) CHECK(res.graph->solid == *expect);
    }
    CHECK(nonempty > 5);
}

TEST_CASE("pruning soundness and the node bound") {
    std::mt19937_64 rng(333);
    for (int trial = 0; trial < 30; ++trial) {
        auto d = random_dag(6, 0.4, rng);
        auto p = dag_to_cpdag(d);
        bool truncated = false;
        auto k = sample_constraints(d, p, 2, rng, &truncated);

        SearchOptions pruned{SearchMode::Pdag, true, std::nullopt};
        SearchOptions unpruned{SearchMode::Pdag, false, std::nullopt};
        auto f1 = fresh_table(p);
        auto f2 = fresh_table(p);
        SearchStats s1, s2;
        bool sat1 = search(p, p, k, nullptr, f1, pruned, s1);
        bool sat2 = search(p, p, k, nullptr, f2, unpruned, s2);
        CHECK(sat1 == sat2);
        CHECK(f1 == f2);
        CHECK(s1.nodes_visited <= s2.nodes_visited);
        long long u = s2.uncertainties;
        if (u < 62) CHECK(s2.nodes_visited <= (1ll << (u + 1)) - 1);
    }
}

TEST_CASE("adjacent positive constraint pins the edge") {
    auto p = G("graph pdag 3\nA B C\nA oo B\nB oo C\n");
    auto res = find_pc_graph(p, {{0, 1, Sign::Positive}},
                             SearchOptions{SearchMode::Pdag, true, std::nullopt});
    REQUIRE(res.sat);
    CHECK(res.graph->solid.mark(1, 0) == Mark::Tail);
    CHECK(res.graph->solid.mark(0, 1) == Mark::Arrow);
}

TEST_CASE("knowledge is monotone") {
    std::mt19937_64 rng(444);
    for (int trial = 0; trial < 25; ++trial) {
        auto d = random_dag(6, 0.4, rng);
        auto p = dag_to_cpdag(d);
        bool truncated = false;
        auto k2 = sample_constraints(d, p, 3, rng, &truncated);
        if (k2.size() < 2) continue;
        std::vector<KnowledgeConstraint> k1(k2.begin(), k2.end() - 1);
        SearchOptions opts{SearchMode::Pdag, true, std::nullopt};
        auto r1 = find_pc_graph(p, k1, opts);
        auto r2 = find_pc_graph(p, k2, opts);
        REQUIRE(r1.sat);
        REQUIRE(r2.sat);
        for (auto [u, v] : p.edges())
            for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}}) {
                Mark m1 = r1.graph->solid.mark(a, b);
                if (m1 != Mark::Circle) CHECK(r2.graph->solid.mark(a, b) == m1);
            }
    }
}

TEST_CASE("reference completion yields a valid class member") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        auto d = random_dag(5, 0.4, rng);
        LatentSpec l;
        l.hidden = {trial % 5};
        auto mag = latent_project(d, l);
        if (2 * mag.edge_count() > 14) continue;
        auto p = mag_to_pag(mag);
        auto ref = reference_completion(p);
        REQUIRE(ref.has_value());
        CHECK(class_violations(*ref).empty());
        CHECK(is_maximal_mag(*ref));
        CHECK(markov_equivalent(*ref, mag));
    }
}
