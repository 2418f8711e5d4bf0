#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "pathcon/incorporate.hpp"

namespace pathcon {

struct GenConfig {
    SearchMode mode = SearchMode::Pdag;
    int n_vertices = 10;
    double edge_density = 0.3;       // per-pair edge probability, [0.1, 0.9]
    double hidden_fraction = 0.2;    // PAG experiments only
    int n_constraints = 3;
    std::uint64_t replicate_seed = 0;
    int max_uncertainties = 20;      // skip replicates above this
    long long node_budget = 2'000'000;
};

struct RunRecord {
    GenConfig config;
    int replicate = 0;
    bool ok = false;
    std::string failure;
    bool pool_truncated = false;
    int uncertainties = 0;
    int inferences = 0;
    double inference_rate = 0.0;
    long long nodes_pruned = 0;
    long long nodes_unpruned = 0;
    double ebf_pruned = 0.0;
    double ebf_unpruned = 0.0;
};

// Random DAG: uniform topological order, each forward pair present
// independently with probability `density`. Vertices named V0..V(n-1).
MixedGraph gen_random_dag(int n, double density, std::mt19937_64& rng);

// Ordered pairs whose true ancestral status in `truth` is not already
// entailed by p, sampled without replacement. `truncated` flags a pool
// smaller than n.
std::vector<KnowledgeConstraint> sample_constraints(const MixedGraph& truth,
                                                    const MixedGraph& p, int n,
                                                    std::mt19937_64& rng,
                                                    bool* truncated = nullptr);

// Circle marks of `before` that are oriented in `after`, over the circle
// count of `before`; 0 with *undefined set when there are no uncertainties.
double inference_rate(const MixedGraph& before, const MixedGraph& after,
                      bool* undefined = nullptr);

// nodes^(1/uncertainties); requires uncertainties >= 1.
double effective_branching_factor(long long nodes, int uncertainties);

// One generate/convert/sample/search replicate.
RunRecord run_replicate(const GenConfig& config, int replicate, std::uint64_t master_seed);

// Full grid; one CSV row per replicate, deterministic under the master seed.
std::string run_experiment(const std::vector<GenConfig>& grid, int replicates,
                           std::uint64_t master_seed);

extern const char* kRunRecordCsvHeader;
std::string to_csv_row(const RunRecord& r);

}  // namespace pathcon
