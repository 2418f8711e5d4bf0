#include "pathcon/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pathcon/classbuild.hpp"
#include "pathcon/errors.hpp"

namespace pathcon {

MixedGraph gen_random_dag(int n, double density, std::mt19937_64& rng) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
    MixedGraph d(GraphClass::Dag, names);

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng) < density)
                d.add_edge(order[i], order[j], Mark::Tail, Mark::Arrow);
    return d;
}

std::vector<KnowledgeConstraint> sample_constraints(const MixedGraph& truth,
                                                    const MixedGraph& p, int n,
                                                    std::mt19937_64& rng, bool* truncated) {
    if (truth.names() != p.names())
        throw std::invalid_argument("truth and class graph must share the vertex set");
    std::vector<KnowledgeConstraint> pool;
    for (int x = 0; x < p.vertex_count(); ++x) {
        for (int y = 0; y < p.vertex_count(); ++y) {
            if (x == y) continue;
            if (is_ancestor(truth, x, y)) {
                if (!has_directed_path(p, x, y))
                    pool.push_back({x, y, Sign::Positive});
            } else {
                if (has_possibly_directed_path(p, x, y))
                    pool.push_back({x, y, Sign::Negative});
            }
        }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    if (truncated) *truncated = static_cast<int>(pool.size()) < n;
    if (static_cast<int>(pool.size()) > n) pool.resize(n);
    return pool;
}

double inference_rate(const MixedGraph& before, const MixedGraph& after, bool* undefined) {
    auto circles = before.circle_positions();
    if (undefined) *undefined = circles.empty();
    if (circles.empty()) return 0.0;
    int inferred = 0;
    for (auto [x, y] : circles)
        if (after.mark(x, y) != Mark::Circle) ++inferred;
    return static_cast<double>(inferred) / static_cast<double>(circles.size());
}

double effective_branching_factor(long long nodes, int uncertainties) {
    if (uncertainties < 1)
        throw std::invalid_argument("effective branching factor needs uncertainties >= 1");
    return std::pow(static_cast<double>(nodes), 1.0 / uncertainties);
}

RunRecord run_replicate(const GenConfig& config, int replicate, std::uint64_t master_seed) {
    RunRecord rec;
    rec.config = config;
    rec.replicate = replicate;
    std::seed_seq seq{master_seed, config.replicate_seed, static_cast<std::uint64_t>(replicate)};
    std::mt19937_64 rng(seq);
    try {
        MixedGraph dag = gen_random_dag(config.n_vertices, config.edge_density, rng);
        MixedGraph p(GraphClass::Pag, dag.names());
        SearchOptions opts;
        const SeparationTable* table = nullptr;
        SeparationTable truth_table;
        MixedGraph truth = dag;
        if (config.mode == SearchMode::Pdag) {
            p = dag_to_cpdag(dag);
            opts.mode = SearchMode::Pdag;
        } else {
            std::vector<int> verts(config.n_vertices);
            for (int i = 0; i < config.n_vertices; ++i) verts[i] = i;
            std::shuffle(verts.begin(), verts.end(), rng);
            int n_hidden = static_cast<int>(std::lround(config.hidden_fraction * config.n_vertices));
            LatentSpec latents;
            for (int i = 0; i < n_hidden; ++i) latents.hidden.insert(verts[i]);
            truth = latent_project(dag, latents);
            p = mag_to_pag(truth, std::max(20, config.max_uncertainties));
            truth_table = build_separation_table(truth);
            table = &truth_table;
            opts.mode = SearchMode::Pag;
        }

        rec.uncertainties = static_cast<int>(p.circle_positions().size());
        if (rec.uncertainties > config.max_uncertainties)
            throw ResourceError("uncertainty cap exceeded");
        auto k = sample_constraints(truth, p, config.n_constraints, rng, &rec.pool_truncated);

        opts.node_budget = config.node_budget;
        opts.pruning = true;
        auto pruned = find_pc_graph(p, k, opts, table);
        opts.pruning = false;
        auto unpruned = find_pc_graph(p, k, opts, table);
        if (!pruned.sat || !unpruned.sat)
            throw InvariantError("sampled constraints were not jointly satisfiable");
        if (!(pruned.graph->solid == unpruned.graph->solid))
            throw InvariantError("pruned and unpruned searches disagree");

        rec.nodes_pruned = pruned.stats.nodes_visited;
        rec.nodes_unpruned = unpruned.stats.nodes_visited;
        bool undefined = false;
        rec.inference_rate = inference_rate(p, pruned.graph->solid, &undefined);
        rec.inferences = static_cast<int>(std::lround(rec.inference_rate * rec.uncertainties));
        if (rec.uncertainties >= 1) {
            rec.ebf_pruned = effective_branching_factor(rec.nodes_pruned, rec.uncertainties);
            rec.ebf_unpruned = effective_branching_factor(rec.nodes_unpruned, rec.uncertainties);
        }
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.failure = e.what();
    }
    return rec;
}

const char* kRunRecordCsvHeader =
    "mode,n_vertices,edge_density,hidden_fraction,n_constraints,replicate,ok,failure,"
    "pool_truncated,uncertainties,inferences,inference_rate,nodes_pruned,nodes_unpruned,"
    "ebf_pruned,ebf_unpruned";

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n') c = ';';
    return out;
}

}  // namespace

std::string to_csv_row(const RunRecord& r) {
    std::ostringstream out;
    out << (r.config.mode == SearchMode::Pdag ? "pdag" : "pag") << ',' << r.config.n_vertices
        << ',' << format_double(r.config.edge_density) << ','
        << format_double(r.config.hidden_fraction) << ',' << r.config.n_constraints << ','
        << r.replicate << ',' << (r.ok ? 1 : 0) << ',' << csv_escape(r.failure) << ','
        << (r.pool_truncated ? 1 : 0) << ',' << r.uncertainties << ',' << r.inferences << ','
        << format_double(r.inference_rate) << ',' << r.nodes_pruned << ',' << r.nodes_unpruned
        << ',' << format_double(r.ebf_pruned) << ',' << format_double(r.ebf_unpruned);
    return out.str();
}

std::string run_experiment(const std::vector<GenConfig>& grid, int replicates,
                           std::uint64_t master_seed) {
    std::ostringstream out;
    out << kRunRecordCsvHeader << '\n';
    for (size_t cell = 0; cell < grid.size(); ++cell) {
        GenConfig config = grid[cell];
        config.replicate_seed = cell;
        for (int r = 0; r < replicates; ++r)
            out << to_csv_row(run_replicate(config, r, master_seed)) << '\n';
    }
    return out.str();
}

}  // namespace pathcon
