#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pathcon/incorporate.hpp"
#include "pathcon/knowledge.hpp"

namespace pathcon {

// Knowledge line as read from a file: constraint plus optional weighting.
// Weights default to u = 1, c = 0 (the largest-subset setting); "p=" applies
// the belief weighting, "pv=" the p-value weighting, "u=... c=..." is
// explicit.
struct KnowledgeLine {
    std::string x;
    std::string y;
    Sign sign;
    double utility = 1.0;
    double cost = 0.0;
};

struct GraphDocument {
    MixedGraph graph;
    std::vector<KnowledgeLine> knowledge;
};

// Text format:
//   graph <class> <n>
//   <name> <name> ...            (n names, one line)
//   A <mark><mark> B             (one line per edge; marks in {-, >, o},
//                                 mark at A first: "A -> B" is A->B,
//                                 "A oo B" is A o--o B, "A >> B" is A <-> B)
//   knowledge:                   (optional trailing section)
//   X => Y [p=v | pv=v | u=v c=v]
//   X !=> Y [...]
GraphDocument parse_graph_document(const std::string& text);
std::string serialize_graph_document(const GraphDocument& doc);

std::vector<KnowledgeLine> parse_knowledge_file(const std::string& text);

// Resolves names against g; throws ParseError on unknown vertices.
std::vector<WeightedConstraint> resolve_constraints(const MixedGraph& g,
                                                    const std::vector<KnowledgeLine>& lines);

KnowledgeLine to_knowledge_line(const MixedGraph& g, const KnowledgeConstraint& c);

// Graphviz rendering: circles as odot arrow shapes, knowledge edges dashed.
std::string to_dot(const MixedGraph& g, const std::vector<KnowledgeConstraint>& dashed = {});

}  // namespace pathcon
