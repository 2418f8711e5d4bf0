#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathcon/bench.hpp"
#include "pathcon/bnb.hpp"
#include "pathcon/classbuild.hpp"
#include "pathcon/errors.hpp"
#include "pathcon/io.hpp"

namespace {

// Stable exit-code contract.
constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pathcon::ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw pathcon::ParseError("cannot open file for writing: " + path);
    out << text;
}

pathcon::SearchMode resolve_mode(const pathcon::MixedGraph& g, const std::string& flag) {
    using pathcon::GraphClass;
    using pathcon::SearchMode;
    if (flag == "pdag") {
        if (g.graph_class() != GraphClass::Pdag)
            throw std::invalid_argument("--mode pdag requires a pdag graph file");
        return SearchMode::Pdag;
    }
    if (flag == "pag") {
        if (g.graph_class() != GraphClass::Pag)
            throw std::invalid_argument("--mode pag requires a pag graph file");
        return SearchMode::Pag;
    }
    switch (g.graph_class()) {
        case GraphClass::Pdag: return SearchMode::Pdag;
        case GraphClass::Pag: return SearchMode::Pag;
        default:
            throw std::invalid_argument(
                "input graph must be a pdag or pag (use 'convert' first)");
    }
}

struct IncorporateArgs {
    std::string graph_file;
    std::string knowledge_file;
    std::string mode;
    bool no_prune = false;
    long long budget = 0;
    std::string dot_out;
    std::string out_file;
};

std::vector<pathcon::WeightedConstraint> load_constraints(const pathcon::GraphDocument& doc,
                                                          const std::string& knowledge_file) {
    auto lines = doc.knowledge;
    if (!knowledge_file.empty()) {
        auto extra = pathcon::parse_knowledge_file(read_file(knowledge_file));
        lines.insert(lines.end(), extra.begin(), extra.end());
    }
    return pathcon::resolve_constraints(doc.graph, lines);
}

void print_search_stats(const pathcon::MixedGraph& input, const pathcon::MixedGraph& solid,
                        const pathcon::SearchStats& stats) {
    bool undefined = false;
    double rate = pathcon::inference_rate(input, solid, &undefined);
    int inferred = 0;
    for (auto [x, y] : input.circle_positions())
        if (solid.mark(x, y) != pathcon::Mark::Circle) ++inferred;
    std::cout << "# uncertainties " << stats.uncertainties << '\n';
    std::cout << "# inferences " << inferred << '\n';
    std::cout << "# inference_rate " << rate << (undefined ? " undefined" : "") << '\n';
    std::cout << "# nodes_visited " << stats.nodes_visited << '\n';
}

int cmd_incorporate(const IncorporateArgs& args) {
    auto doc = pathcon::parse_graph_document(read_file(args.graph_file));
    pathcon::validate_class(doc.graph);
    auto weighted = load_constraints(doc, args.knowledge_file);
    std::vector<pathcon::KnowledgeConstraint> k;
    for (const auto& w : weighted) k.push_back(w.constraint);

    pathcon::SearchOptions opts;
    opts.mode = resolve_mode(doc.graph, args.mode);
    opts.pruning = !args.no_prune;
    if (args.budget > 0) opts.node_budget = args.budget;

    auto res = pathcon::find_pc_graph(doc.graph, k, opts);
    if (!res.sat) {
        std::cout << "error: inconsistent: prior knowledge conflicts with the graph\n";
        return kExitInconsistent;
    }

    pathcon::GraphDocument out;
    out.graph = res.graph->solid;
    for (const auto& c : res.graph->dashed)
        out.knowledge.push_back(pathcon::to_knowledge_line(out.graph, c));
    std::string text = pathcon::serialize_graph_document(out);
    if (args.out_file.empty()) std::cout << text;
    else write_file(args.out_file, text);
    print_search_stats(doc.graph, res.graph->solid, res.stats);
    if (!args.dot_out.empty())
        write_file(args.dot_out, pathcon::to_dot(res.graph->solid, res.graph->dashed));
    return kExitOk;
}

int cmd_select(const IncorporateArgs& args) {
    auto doc = pathcon::parse_graph_document(read_file(args.graph_file));
    pathcon::validate_class(doc.graph);
    auto weighted = load_constraints(doc, args.knowledge_file);

    pathcon::SearchOptions opts;
    opts.mode = resolve_mode(doc.graph, args.mode);
    opts.pruning = !args.no_prune;
    if (args.budget > 0) opts.node_budget = args.budget;

    auto bnb = pathcon::search_bnb(doc.graph, weighted, opts);
    if (!bnb.witness) {
        std::cout << "error: invariant: the input graph admits no valid completion\n";
        return kExitInvariant;
    }
    std::cout << "# selected " << bnb.best_subset.size() << " of " << weighted.size() << '\n';
    std::cout << "# score " << bnb.best_score << '\n';
    std::vector<pathcon::KnowledgeConstraint> selected;
    for (int i : bnb.best_subset) {
        const auto& c = weighted[i].constraint;
        selected.push_back(c);
        std::cout << "# keep " << doc.graph.name(c.x)
                  << (c.sign == pathcon::Sign::Positive ? " => " : " !=> ")
                  << doc.graph.name(c.y) << '\n';
    }
    for (size_t i = 0; i < weighted.size(); ++i) {
        if (std::find(bnb.best_subset.begin(), bnb.best_subset.end(), static_cast<int>(i)) !=
            bnb.best_subset.end())
            continue;
        const auto& c = weighted[i].constraint;
        std::cout << "# drop " << doc.graph.name(c.x)
                  << (c.sign == pathcon::Sign::Positive ? " => " : " !=> ")
                  << doc.graph.name(c.y) << '\n';
    }

    auto res = pathcon::find_pc_graph(doc.graph, selected, opts);
    if (!res.sat) {
        std::cout << "error: invariant: selected subset failed to incorporate\n";
        return kExitInvariant;
    }
    pathcon::GraphDocument out;
    out.graph = res.graph->solid;
    for (const auto& c : res.graph->dashed)
        out.knowledge.push_back(pathcon::to_knowledge_line(out.graph, c));
    std::string text = pathcon::serialize_graph_document(out);
    if (args.out_file.empty()) std::cout << text;
    else write_file(args.out_file, text);
    print_search_stats(doc.graph, res.graph->solid, res.stats);
    if (!args.dot_out.empty())
        write_file(args.dot_out, pathcon::to_dot(res.graph->solid, res.graph->dashed));
    return kExitOk;
}

int cmd_convert(const std::string& graph_file, const std::string& to,
                const std::vector<std::string>& hide, int max_positions) {
    auto doc = pathcon::parse_graph_document(read_file(graph_file));
    pathcon::validate_class(doc.graph);
    pathcon::MixedGraph out = doc.graph;
    if (to == "cpdag") {
        out = pathcon::dag_to_cpdag(doc.graph);
    } else if (to == "mag") {
        if (hide.empty()) {
            out = pathcon::dag_to_mag(doc.graph);
        } else {
            pathcon::LatentSpec latents;
            for (const auto& name : hide) latents.hidden.insert(doc.graph.index(name));
            out = pathcon::latent_project(doc.graph, latents);
        }
    } else if (to == "pag") {
        out = pathcon::mag_to_pag(doc.graph, max_positions);
    } else {
        throw std::invalid_argument("unsupported conversion target: " + to);
    }
    std::cout << pathcon::serialize_graph_document({out, {}});
    return kExitOk;
}

int cmd_check(const std::string& graph_file) {
    auto doc = pathcon::parse_graph_document(read_file(graph_file));
    auto violations = pathcon::class_violations(doc.graph);
    if (violations.empty()) {
        std::cout << "ok: valid " << pathcon::to_string(doc.graph.graph_class()) << " with "
                  << doc.graph.vertex_count() << " vertices and " << doc.graph.edge_count()
                  << " edges\n";
        return kExitOk;
    }
    for (const auto& v : violations) std::cout << "error: invariant: " << v << '\n';
    return kExitInvariant;
}

int cmd_bench(const std::string& config_file, std::uint64_t seed, const std::string& out_file) {
    auto json = nlohmann::json::parse(read_file(config_file));
    pathcon::GenConfig base;
    base.mode = json.value("mode", std::string("pdag")) == "pag" ? pathcon::SearchMode::Pag
                                                                 : pathcon::SearchMode::Pdag;
    base.hidden_fraction = json.value("hidden_fraction", 0.2);
    base.max_uncertainties = json.value("max_uncertainties", 20);
    base.node_budget = json.value("node_budget", 2'000'000LL);
    auto as_list = [&](const char* key, auto fallback) {
        std::vector<decltype(fallback)> out;
        if (!json.contains(key)) {
            out.push_back(fallback);
        } else if (json[key].is_array()) {
            for (const auto& v : json[key]) out.push_back(v.template get<decltype(fallback)>());
        } else {
            out.push_back(json[key].template get<decltype(fallback)>());
        }
        return out;
    };
    auto vertex_counts = as_list("n_vertices", 10);
    auto densities = as_list("edge_density", 0.3);
    auto constraint_counts = as_list("n_constraints", 3);
    int replicates = json.value("replicates", 3);

    std::vector<pathcon::GenConfig> grid;
    for (int n : vertex_counts) {
        for (double d : densities) {
            for (int c : constraint_counts) {
                pathcon::GenConfig cfg = base;
                cfg.n_vertices = n;
                cfg.edge_density = d;
                cfg.n_constraints = c;
                grid.push_back(cfg);
            }
        }
    }
    std::string csv = pathcon::run_experiment(grid, replicates, seed);
    if (out_file.empty()) std::cout << csv;
    else write_file(out_file, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"path-constraint incorporation for PDAGs and PAGs"};
    app.require_subcommand(1);

    IncorporateArgs inc;
    auto* incorporate = app.add_subcommand(
        "incorporate", "incorporate causal path constraints into a PDAG or PAG");
    incorporate->add_option("graph", inc.graph_file, "graph file")->required();
    incorporate->add_option("knowledge", inc.knowledge_file, "knowledge file");
    incorporate->add_option("--mode", inc.mode, "pdag or pag (default: from the graph class)");
    incorporate->add_flag("--no-prune", inc.no_prune, "disable the prune rule");
    incorporate->add_option("--budget", inc.budget, "search node budget");
    incorporate->add_option("--dot", inc.dot_out, "write a Graphviz rendering here");
    incorporate->add_option("-o,--output", inc.out_file, "write the result here (default: stdout)");

    IncorporateArgs sel;
    auto* select = app.add_subcommand(
        "select", "select a maximum-score consistent knowledge subset, then incorporate it");
    select->add_option("graph", sel.graph_file, "graph file")->required();
    select->add_option("knowledge", sel.knowledge_file, "knowledge file with weights");
    select->add_option("--mode", sel.mode, "pdag or pag (default: from the graph class)");
    select->add_flag("--no-prune", sel.no_prune, "disable score bounding");
    select->add_option("--budget", sel.budget, "search node budget");
    select->add_option("--dot", sel.dot_out, "write a Graphviz rendering here");
    select->add_option("-o,--output", sel.out_file, "write the result here (default: stdout)");

    std::string conv_graph, conv_to;
    std::vector<std::string> conv_hide;
    int conv_max_positions = 20;
    auto* convert = app.add_subcommand("convert", "dag->cpdag, dag->mag, mag->pag");
    convert->add_option("graph", conv_graph, "graph file")->required();
    convert->add_option("--to", conv_to, "cpdag, mag or pag")->required();
    convert->add_option("--hide", conv_hide, "vertices to hide (dag->mag)")->delimiter(',');
    convert->add_option("--max-positions", conv_max_positions,
                        "enumeration cap for mag->pag");

    std::string bench_config, bench_out;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "run the randomized experiment grid");
    bench->add_option("config", bench_config, "JSON config file")->required();
    bench->add_option("--seed", bench_seed, "master seed")->required();
    bench->add_option("-o,--output", bench_out, "CSV output file (default: stdout)");

    std::string check_graph;
    auto* check = app.add_subcommand("check", "validate class invariants of a graph file");
    check->add_option("graph", check_graph, "graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (incorporate->parsed()) return cmd_incorporate(inc);
        if (select->parsed()) return cmd_select(sel);
        if (convert->parsed()) return cmd_convert(conv_graph, conv_to, conv_hide,
                                                  conv_max_positions);
        if (bench->parsed()) return cmd_bench(bench_config, bench_seed, bench_out);
        if (check->parsed()) return cmd_check(check_graph);
    } catch (const pathcon::ParseError& e) {
        std::cout << "error: parse: " << e.what();
        if (e.line() > 0) std::cout << " (line " << e.line() << ")";
        std::cout << '\n';
        return kExitParse;
    } catch (const pathcon::ResourceError& e) {
        std::cout << "error: resource: " << e.what() << '\n';
        return kExitResource;
    } catch (const pathcon::InvariantError& e) {
        std::cout << "error: invariant: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const nlohmann::json::exception& e) {
        std::cout << "error: parse: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cout << "error: parse: " << e.what() << '\n';
        return kExitParse;
    }
    return kExitOk;
}
