#include "dicola/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <tuple>
#include <vector>

#include "dicola/errors.hpp"

namespace dicola {

namespace {

char left_char(Mark m) {
    switch (m) {
        case Mark::Tail: return '-';
        case Mark::Arrow: return '<';
        case Mark::Circle: return 'o';
    }
    return '?';
}

char right_char(Mark m) {
    switch (m) {
        case Mark::Tail: return '-';
        case Mark::Arrow: return '>';
        case Mark::Circle: return 'o';
    }
    return '?';
}

std::optional<Mark> parse_left(char c) {
    switch (c) {
        case '-': return Mark::Tail;
        case '<': return Mark::Arrow;
        case 'o': return Mark::Circle;
        default: return std::nullopt;
    }
}

std::optional<Mark> parse_right(char c) {
    switch (c) {
        case '-': return Mark::Tail;
        case '>': return Mark::Arrow;
        case 'o': return Mark::Circle;
        default: return std::nullopt;
    }
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

void check_name(std::string_view name, int line_no) {
    if (name.empty() || name.find_first_of(" \t,#") != std::string_view::npos)
        throw InputError("line " + std::to_string(line_no) + ": invalid vertex name '" + std::string(name) + "'");
}

struct ParsedEdge {
    std::string a, b;
    Mark at_a, at_b;
};

struct Parsed {
    std::vector<std::string> names;
    std::vector<ParsedEdge> edges;
};

Parsed parse(std::string_view text) {
    Parsed out;
    std::unordered_map<std::string, int> seen;
    auto declare = [&](const std::string& n) {
        if (seen.emplace(n, static_cast<int>(out.names.size())).second) out.names.push_back(n);
    };
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.starts_with("vertices:")) {
            auto rest = trim(line.substr(9));
            while (!rest.empty()) {
                auto comma = rest.find(',');
                auto tok = trim(rest.substr(0, comma));
                check_name(tok, line_no);
                if (seen.count(std::string(tok))) throw InputError("line " + std::to_string(line_no) + ": duplicate vertex " + std::string(tok));
                declare(std::string(tok));
                if (comma == std::string_view::npos) break;
                rest = rest.substr(comma + 1);
            }
            continue;
        }
        std::istringstream fields{std::string(line)};
        std::string a, tok, b, extra;
        if (!(fields >> a >> tok >> b) || (fields >> extra))
            throw InputError("line " + std::to_string(line_no) + ": expected 'NAME MARKS NAME'");
        check_name(a, line_no);
        check_name(b, line_no);
        std::optional<Mark> l, r;
        if (tok.size() == 3 && tok[1] == '-') {
            l = parse_left(tok[0]);
            r = parse_right(tok[2]);
        }
        if (!l || !r) throw InputError("line " + std::to_string(line_no) + ": bad edge token '" + tok + "'");
        declare(a);
        declare(b);
        out.edges.push_back(ParsedEdge{a, b, *l, *r});
    }
    return out;
}

}  // namespace

std::string edge_token(Mark left, Mark right) { return {left_char(left), '-', right_char(right)}; }

std::string write_graph(const MixedGraph& g) {
    std::string out = "vertices: ";
    for (int v = 0; v < g.size(); ++v) {
        if (v) out += ',';
        out += g.name(v);
    }
    out += '\n';
    for (const auto& e : g.edges()) {
        out += g.name(e.a);
        out += ' ';
        out += edge_token(e.at_a, e.at_b);
        out += ' ';
        out += g.name(e.b);
        out += '\n';
    }
    return out;
}

std::string write_graph(const UndirectedGraph& g) {
    std::string out = "vertices: ";
    for (int v = 0; v < g.size(); ++v) {
        if (v) out += ',';
        out += g.name(v);
    }
    out += '\n';
    for (auto [a, b] : g.edges()) out += g.name(a) + " --- " + g.name(b) + '\n';
    return out;
}

MixedGraph read_graph(std::string_view text, std::optional<GraphKind> kind) {
    auto parsed = parse(text);
    if (!kind) {
        GraphKind k = GraphKind::Dag;
        for (const auto& e : parsed.edges) {
            if (e.at_a == Mark::Circle || e.at_b == Mark::Circle || (e.at_a == Mark::Tail && e.at_b == Mark::Tail)) {
                k = GraphKind::Pag;
                break;
            }
            if (e.at_a == Mark::Arrow && e.at_b == Mark::Arrow) k = GraphKind::Mag;
        }
        kind = k;
    }
    VertexNames names(parsed.names);
    std::vector<Edge> edges;
    edges.reserve(parsed.edges.size());
    for (const auto& e : parsed.edges) {
        int a = names.index_of(e.a);
        int b = names.index_of(e.b);
        if (a < b)
            edges.push_back(Edge{a, b, e.at_a, e.at_b});
        else
            edges.push_back(Edge{b, a, e.at_b, e.at_a});
    }
    return MixedGraph::from_edges(*kind, std::move(names), edges);
}

UndirectedGraph read_undirected_graph(std::string_view text) {
    auto parsed = parse(text);
    UndirectedGraph g(parsed.names);
    for (const auto& e : parsed.edges) {
        if (e.at_a != Mark::Tail || e.at_b != Mark::Tail) throw InputError("undirected graph may only contain '---' edges");
        g.add_edge(e.a, e.b);
    }
    return g;
}

MixedGraph load_graph(const std::filesystem::path& path, std::optional<GraphKind> kind) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_graph(ss.str(), kind);
}

void save_graph(const std::filesystem::path& path, const MixedGraph& g) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write graph file " + path.string());
    out << write_graph(g);
}

}  // namespace dicola
