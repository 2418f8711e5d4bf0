#include "pathcon/io.hpp"

#include <cstdio>
#include <sstream>

#include "pathcon/errors.hpp"

namespace pathcon {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::optional<Mark> mark_from_char(char c) {
    switch (c) {
        case '-': return Mark::Tail;
        case '>': return Mark::Arrow;
        case 'o': return Mark::Circle;
        default: return std::nullopt;
    }
}

char mark_to_char(Mark m) {
    switch (m) {
        case Mark::Tail: return '-';
        case Mark::Arrow: return '>';
        case Mark::Circle: return 'o';
    }
    return '?';
}

std::string format_weight(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_number(const std::string& s, int line_no) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "'", line_no);
    }
    if (pos != s.size()) throw ParseError("bad number '" + s + "'", line_no);
    return v;
}

KnowledgeLine parse_knowledge_tokens(const std::vector<std::string>& toks, int line_no) {
    if (toks.size() < 3)
        throw ParseError("knowledge line needs '<X> => <Y>' or '<X> !=> <Y>'", line_no);
    KnowledgeLine kl;
    kl.x = toks[0];
    kl.y = toks[2];
    if (toks[1] == "=>") kl.sign = Sign::Positive;
    else if (toks[1] == "!=>") kl.sign = Sign::Negative;
    else throw ParseError("expected '=>' or '!=>', got '" + toks[1] + "'", line_no);
    if (kl.x == kl.y) throw ParseError("constraint endpoints must differ", line_no);

    std::optional<double> u, c;
    for (size_t i = 3; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("unknown token '" + t + "'", line_no);
        std::string key = t.substr(0, eq), val = t.substr(eq + 1);
        double v = parse_number(val, line_no);
        if (key == "p") {
            auto [pu, pc] = weights_from_belief(v);
            u = pu;
            c = pc;
        } else if (key == "pv") {
            auto [pu, pc] = weights_from_pvalue(v);
            u = pu;
            c = pc;
        } else if (key == "u") {
            u = v;
        } else if (key == "c") {
            c = v;
        } else {
            throw ParseError("unknown weight key '" + key + "'", line_no);
        }
    }
    kl.utility = u.value_or(1.0);
    kl.cost = c.value_or(0.0);
    return kl;
}

}  // namespace

GraphDocument parse_graph_document(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    int line_no = 0;
    // Lines with content, comments stripped.
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    while (std::getline(ss, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (!toks.empty()) rows.emplace_back(line_no, std::move(toks));
    }
    if (rows.empty()) throw ParseError("empty graph file");

    auto& [hline, header] = rows.front();
    if (header.size() != 3 || header[0] != "graph")
        throw ParseError("expected header 'graph <class> <n>'", hline);
    auto cls = graph_class_from_string(header[1]);
    if (!cls) throw ParseError("unknown graph class '" + header[1] + "'", hline);
    int n = 0;
    try {
        n = std::stoi(header[2]);
    } catch (const std::exception&) {
        throw ParseError("bad vertex count '" + header[2] + "'", hline);
    }
    if (n < 0) throw ParseError("negative vertex count", hline);

    if (rows.size() < 2 && n > 0) throw ParseError("missing vertex-name line", hline);
    size_t row = 1;
    std::vector<std::string> names;
    if (n > 0) {
        auto& [nline, ntoks] = rows[row];
        if (static_cast<int>(ntoks.size()) != n)
            throw ParseError("expected " + std::to_string(n) + " vertex names, got " +
                                 std::to_string(ntoks.size()),
                             nline);
        for (const auto& nm : ntoks) {
            if (nm == "knowledge:")
                throw ParseError("'knowledge:' is reserved and cannot name a vertex", nline);
            names.push_back(nm);
        }
        ++row;
    }

    GraphDocument doc;
    try {
        doc.graph = MixedGraph(*cls, names);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), rows.size() > 1 ? rows[1].first : hline);
    }

    bool in_knowledge = false;
    for (; row < rows.size(); ++row) {
        auto& [eline, toks] = rows[row];
        if (toks.size() == 1 && toks[0] == "knowledge:") {
            if (in_knowledge) throw ParseError("duplicate 'knowledge:' section", eline);
            in_knowledge = true;
            continue;
        }
        if (in_knowledge) {
            doc.knowledge.push_back(parse_knowledge_tokens(toks, eline));
            continue;
        }
        if (toks.size() != 3)
            throw ParseError("expected '<A> <markmark> <B>'", eline);
        if (toks[1].size() != 2)
            throw ParseError("expected two mark characters, got '" + toks[1] + "'", eline);
        auto at_a = mark_from_char(toks[1][0]);
        auto at_b = mark_from_char(toks[1][1]);
        if (!at_a || !at_b)
            throw ParseError("marks must be '-', '>' or 'o', got '" + toks[1] + "'", eline);
        auto a = doc.graph.try_index(toks[0]);
        auto b = doc.graph.try_index(toks[2]);
        if (!a) throw ParseError("unknown vertex '" + toks[0] + "'", eline);
        if (!b) throw ParseError("unknown vertex '" + toks[2] + "'", eline);
        try {
            doc.graph.add_edge(*a, *b, *at_a, *at_b);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), eline);
        }
    }
    return doc;
}

std::string serialize_graph_document(const GraphDocument& doc) {
    const MixedGraph& g = doc.graph;
    std::ostringstream out;
    out << "graph " << to_string(g.graph_class()) << ' ' << g.vertex_count() << '\n';
    if (g.vertex_count() > 0) {
        for (int v = 0; v < g.vertex_count(); ++v)
            out << (v ? " " : "") << g.name(v);
        out << '\n';
    }
    for (auto [u, v] : g.edges())
        out << g.name(u) << ' ' << mark_to_char(g.mark(v, u)) << mark_to_char(g.mark(u, v))
            << ' ' << g.name(v) << '\n';
    if (!doc.knowledge.empty()) {
        out << "knowledge:\n";
        for (const auto& kl : doc.knowledge) {
            out << kl.x << (kl.sign == Sign::Positive ? " => " : " !=> ") << kl.y;
            if (kl.utility != 1.0 || kl.cost != 0.0)
                out << " u=" << format_weight(kl.utility) << " c=" << format_weight(kl.cost);
            out << '\n';
        }
    }
    return out.str();
}

std::vector<KnowledgeLine> parse_knowledge_file(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    int line_no = 0;
    std::vector<KnowledgeLine> out;
    while (std::getline(ss, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        out.push_back(parse_knowledge_tokens(toks, line_no));
    }
    return out;
}

std::vector<WeightedConstraint> resolve_constraints(const MixedGraph& g,
                                                    const std::vector<KnowledgeLine>& lines) {
    std::vector<WeightedConstraint> out;
    for (const auto& kl : lines) {
        auto x = g.try_index(kl.x);
        auto y = g.try_index(kl.y);
        if (!x) throw ParseError("constraint names unknown vertex '" + kl.x + "'");
        if (!y) throw ParseError("constraint names unknown vertex '" + kl.y + "'");
        out.push_back({KnowledgeConstraint{*x, *y, kl.sign}, kl.utility, kl.cost});
    }
    return out;
}

KnowledgeLine to_knowledge_line(const MixedGraph& g, const KnowledgeConstraint& c) {
    return KnowledgeLine{g.name(c.x), g.name(c.y), c.sign, 1.0, 0.0};
}

std::string to_dot(const MixedGraph& g, const std::vector<KnowledgeConstraint>& dashed) {
    auto arrow = [](Mark m) {
        switch (m) {
            case Mark::Tail: return "none";
            case Mark::Arrow: return "normal";
            case Mark::Circle: return "odot";
        }
        return "none";
    };
    std::ostringstream out;
    out << "digraph G {\n  edge [dir=both];\n";
    for (int v = 0; v < g.vertex_count(); ++v) out << "  \"" << g.name(v) << "\";\n";
    for (auto [u, v] : g.edges())
        out << "  \"" << g.name(u) << "\" -> \"" << g.name(v) << "\" [arrowtail="
            << arrow(g.mark(v, u)) << ", arrowhead=" << arrow(g.mark(u, v)) << "];\n";
    for (const auto& c : dashed) {
        if (c.sign == Sign::Positive)
            out << "  \"" << g.name(c.x) << "\" -> \"" << g.name(c.y)
                << "\" [style=dashed, arrowtail=none, arrowhead=normal];\n";
        else
            out << "  \"" << g.name(c.y) << "\" -> \"" << g.name(c.x)
                << "\" [style=dashed, arrowtail=odot, arrowhead=normal];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace pathcon
