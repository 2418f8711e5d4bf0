#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pathcon/bench.hpp"
#include "pathcon/bnb.hpp"
#include "pathcon/classbuild.hpp"
#include "pathcon/errors.hpp"
#include "pathcon/io.hpp"

namespace py = pybind11;
using namespace pathcon;

namespace {

SearchMode mode_for(const MixedGraph& g, const std::string& mode) {
    if (mode == "pdag") return SearchMode::Pdag;
    if (mode == "pag") return SearchMode::Pag;
    if (!mode.empty()) throw std::invalid_argument("mode must be 'pdag' or 'pag'");
    if (g.graph_class() == GraphClass::Pdag) return SearchMode::Pdag;
    if (g.graph_class() == GraphClass::Pag) return SearchMode::Pag;
    throw std::invalid_argument("input graph must be a pdag or pag");
}

std::vector<WeightedConstraint> gather(const GraphDocument& doc, const std::string& knowledge) {
    auto lines = doc.knowledge;
    if (!knowledge.empty()) {
        auto extra = parse_knowledge_file(knowledge);
        lines.insert(lines.end(), extra.begin(), extra.end());
    }
    return resolve_constraints(doc.graph, lines);
}

std::string render(const MixedGraph& solid, const std::vector<KnowledgeConstraint>& dashed) {
    GraphDocument out;
    out.graph = solid;
    for (const auto& c : dashed) out.knowledge.push_back(to_knowledge_line(solid, c));
    return serialize_graph_document(out);
}

py::dict incorporate_py(const std::string& graph, const std::string& knowledge,
                        const std::string& mode, bool pruning,
                        std::optional<long long> budget) {
    auto doc = parse_graph_document(graph);
    validate_class(doc.graph);
    std::vector<KnowledgeConstraint> k;
    for (const auto& w : gather(doc, knowledge)) k.push_back(w.constraint);

    SearchOptions opts;
    opts.mode = mode_for(doc.graph, mode);
    opts.pruning = pruning;
    opts.node_budget = budget;
    auto res = find_pc_graph(doc.graph, k, opts);

    py::dict out;
    out["sat"] = res.sat;
    out["nodes_visited"] = res.stats.nodes_visited;
    out["uncertainties"] = res.stats.uncertainties;
    if (res.sat) {
        bool undefined = false;
        out["graph"] = render(res.graph->solid, res.graph->dashed);
        out["dot"] = to_dot(res.graph->solid, res.graph->dashed);
        out["inference_rate"] = inference_rate(doc.graph, res.graph->solid, &undefined);
    }
    return out;
}

py::dict select_py(const std::string& graph, const std::string& knowledge,
                   const std::string& mode, bool pruning, std::optional<long long> budget) {
    auto doc = parse_graph_document(graph);
    validate_class(doc.graph);
    auto weighted = gather(doc, knowledge);

    SearchOptions opts;
    opts.mode = mode_for(doc.graph, mode);
    opts.pruning = pruning;
    opts.node_budget = budget;
    auto bnb = search_bnb(doc.graph, weighted, opts);

    py::dict out;
    out["score"] = bnb.best_score;
    out["nodes_visited"] = bnb.stats.nodes_visited;
    py::list kept, dropped;
    std::vector<KnowledgeConstraint> selected;
    for (size_t i = 0; i < weighted.size(); ++i) {
        const auto& c = weighted[i].constraint;
        std::string label = doc.graph.name(c.x) +
                            (c.sign == Sign::Positive ? " => " : " !=> ") + doc.graph.name(c.y);
        if (std::find(bnb.best_subset.begin(), bnb.best_subset.end(), static_cast<int>(i)) !=
            bnb.best_subset.end()) {
            kept.append(label);
            selected.push_back(c);
        } else {
            dropped.append(label);
        }
    }
    out["kept"] = kept;
    out["dropped"] = dropped;
    auto res = find_pc_graph(doc.graph, selected, opts);
    out["sat"] = res.sat;
    if (res.sat) out["graph"] = render(res.graph->solid, res.graph->dashed);
    return out;
}

std::string convert_py(const std::string& graph, const std::string& to,
                       const std::vector<std::string>& hide, int max_positions) {
    auto doc = parse_graph_document(graph);
    validate_class(doc.graph);
    MixedGraph out;
    if (to == "cpdag") {
        out = dag_to_cpdag(doc.graph);
    } else if (to == "mag") {
        if (hide.empty()) {
            out = dag_to_mag(doc.graph);
        } else {
            LatentSpec latents;
            for (const auto& name : hide) latents.hidden.insert(doc.graph.index(name));
            out = latent_project(doc.graph, latents);
        }
    } else if (to == "pag") {
        out = mag_to_pag(doc.graph, max_positions);
    } else {
        throw std::invalid_argument("unsupported conversion target: " + to);
    }
    return serialize_graph_document({out, {}});
}

std::vector<std::string> check_py(const std::string& graph) {
    return class_violations(parse_graph_document(graph).graph);
}

std::string bench_py(const std::string& mode, int n_vertices, double edge_density,
                     int n_constraints, int replicates, std::uint64_t seed) {
    GenConfig cfg;
    cfg.mode = mode == "pag" ? SearchMode::Pag : SearchMode::Pdag;
    cfg.n_vertices = n_vertices;
    cfg.edge_density = edge_density;
    cfg.n_constraints = n_constraints;
    return run_experiment({cfg}, replicates, seed);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "path-constraint incorporation for PDAGs and PAGs";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    m.def("incorporate", &incorporate_py, py::arg("graph"), py::arg("knowledge") = "",
          py::arg("mode") = "", py::arg("pruning") = true,
          py::arg("budget") = std::nullopt,
          "Incorporate path constraints; returns a dict with 'sat', 'graph', stats.");
    m.def("select", &select_py, py::arg("graph"), py::arg("knowledge") = "",
          py::arg("mode") = "", py::arg("pruning") = true,
          py::arg("budget") = std::nullopt,
          "Pick a maximum-score consistent constraint subset, then incorporate it.");
    m.def("convert", &convert_py, py::arg("graph"), py::arg("to"),
          py::arg("hide") = std::vector<std::string>{}, py::arg("max_positions") = 20,
          "Convert dag->cpdag, dag->mag (optionally hiding vertices) or mag->pag.");
    m.def("check", &check_py, py::arg("graph"),
          "Class invariant violations of a graph file; empty list when valid.");
    m.def("bench", &bench_py, py::arg("mode"), py::arg("n_vertices"),
          py::arg("edge_density"), py::arg("n_constraints"), py::arg("replicates"),
          py::arg("seed"), "Run one experiment cell; returns CSV text.");
}
