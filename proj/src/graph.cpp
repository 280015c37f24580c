#include "qdcolor/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace qdcolor {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::MissingHeader: return "missing header";
        case ParseErrorKind::MalformedHeader: return "malformed header";
        case ParseErrorKind::MalformedLine: return "malformed line";
        case ParseErrorKind::IndexOutOfRange: return "index out of range";
        case ParseErrorKind::SelfLoop: return "self-loop";
        case ParseErrorKind::BadToken: return "bad token";
        case ParseErrorKind::EmptyGraph: return "empty graph";
    }
    return "unknown";
}

namespace {

std::string describe(ParseErrorKind kind, std::size_t line, const std::string& what) {
    std::string msg = to_string(kind);
    if (line > 0) msg += " at line " + std::to_string(line);
    if (!what.empty()) msg += ": " + what;
    return msg;
}

bool parse_uint(std::string_view token, std::uint64_t& out) {
    if (token.empty()) return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : std::runtime_error(describe(kind, line, what)), kind_(kind), line_(line) {}

Graph Graph::from_pairs(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    std::vector<std::uint64_t> ids;
    ids.reserve(2 * pairs.size());
    std::erase_if(pairs, [](const auto& p) { return p.first == p.second; });
    for (auto& [a, b] : pairs) {
        if (a > b) std::swap(a, b);
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    if (pairs.empty()) throw ParseError(ParseErrorKind::EmptyGraph, 0, "no edges after preprocessing");

    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::unordered_map<std::uint64_t, NodeId> index;
    index.reserve(ids.size());
    for (NodeId i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);

    Graph g;
    g.original_ids_ = std::move(ids);
    g.degrees_.assign(g.original_ids_.size(), 0);
    g.edges_.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        const NodeId u = index.at(a);
        const NodeId v = index.at(b);
        g.edges_.push_back({u, v});
        ++g.degrees_[u];
        ++g.degrees_[v];
    }
    // Compaction is monotone, so the edge list is still sorted.
    g.j_max_ = static_cast<NodeId>(
        std::max_element(g.degrees_.begin(), g.degrees_.end()) - g.degrees_.begin());
    return g;
}

std::size_t Graph::max_degree() const noexcept {
    return degrees_.empty() ? 0 : degrees_[j_max_];
}

double Graph::density() const noexcept {
    const double n = static_cast<double>(num_nodes());
    return n < 2 ? 0.0 : 2.0 * static_cast<double>(num_edges()) / (n * (n - 1.0));
}

Graph parse_dimacs(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::uint64_t declared_nodes = 0;
    bool have_header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0] == "c") continue;
        if (tokens[0] == "p") {
            if (have_header) throw ParseError(ParseErrorKind::MalformedHeader, lineno, "duplicate p line");
            std::uint64_t declared_edges = 0;
            if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col") ||
                !parse_uint(tokens[2], declared_nodes) || !parse_uint(tokens[3], declared_edges)) {
                throw ParseError(ParseErrorKind::MalformedHeader, lineno, std::string(line));
            }
            have_header = true;
            pairs.reserve(declared_edges);
        } else if (tokens[0] == "e") {
            if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, lineno, "edge before p line");
            std::uint64_t a = 0;
            std::uint64_t b = 0;
            if (tokens.size() != 3 || !parse_uint(tokens[1], a) || !parse_uint(tokens[2], b)) {
                throw ParseError(ParseErrorKind::MalformedLine, lineno, std::string(line));
            }
            if (a < 1 || b < 1 || a > declared_nodes || b > declared_nodes) {
                throw ParseError(ParseErrorKind::IndexOutOfRange, lineno, std::string(line));
            }
            if (a == b) throw ParseError(ParseErrorKind::SelfLoop, lineno, std::string(line));
            pairs.emplace_back(a, b);
        } else if (tokens[0] == "n") {
            // node weight lines carry nothing we use
        } else {
            throw ParseError(ParseErrorKind::MalformedLine, lineno, std::string(line));
        }
    }
    if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, 0, "no p line");
    return Graph::from_pairs(std::move(pairs));
}

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        if (tokens.size() < 2) throw ParseError(ParseErrorKind::MalformedLine, lineno, std::string(line));
        if (!parse_uint(tokens[0], a) || !parse_uint(tokens[1], b)) {
            throw ParseError(ParseErrorKind::BadToken, lineno, std::string(line));
        }
        pairs.emplace_back(a, b);
    }
    return Graph::from_pairs(std::move(pairs));
}

Graph parse_dimacs_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

Graph parse_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

GraphFormat parse_format(const std::string& name) {
    if (name == "auto") return GraphFormat::Auto;
    if (name == "dimacs" || name == "col") return GraphFormat::Dimacs;
    if (name == "edgelist" || name == "snap") return GraphFormat::EdgeList;
    throw std::invalid_argument("unknown graph format '" + name + "'");
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    if (format == GraphFormat::Auto) {
        format = path.extension() == ".col" ? GraphFormat::Dimacs : GraphFormat::EdgeList;
    }
    return format == GraphFormat::Dimacs ? parse_dimacs(in) : parse_edge_list(in);
}

std::string write_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges()) out << g.original_id(e.u) << ' ' << g.original_id(e.v) << '\n';
    return out.str();
}

std::string to_string(const FixStrategy& s) {
    switch (s.kind) {
        case FixStrategy::Kind::MaxDegree: return "maxdegree";
        case FixStrategy::Kind::DegreeOne: return "degreeone";
        case FixStrategy::Kind::None: return "none";
        case FixStrategy::Kind::Explicit: return std::to_string(s.index);
    }
    return "maxdegree";
}

FixStrategy parse_fix_strategy(const std::string& text) {
    if (text == "maxdegree") return FixStrategy::max_degree();
    if (text == "degreeone") return FixStrategy::degree_one();
    if (text == "none") return FixStrategy::none();
    std::uint64_t index = 0;
    if (!parse_uint(text, index)) throw std::invalid_argument("invalid fix strategy '" + text + "'");
    return FixStrategy::explicit_node(static_cast<NodeId>(index));
}

std::optional<NodeId> select_fixed_node(const Graph& g, const FixStrategy& strategy) {
    switch (strategy.kind) {
        case FixStrategy::Kind::MaxDegree:
            return g.j_max();
        case FixStrategy::Kind::DegreeOne: {
            const auto& deg = g.degrees();
            auto it = std::find(deg.begin(), deg.end(), std::size_t{1});
            if (it == deg.end()) throw std::invalid_argument("graph has no node of degree 1");
            return static_cast<NodeId>(it - deg.begin());
        }
        case FixStrategy::Kind::Explicit:
            if (strategy.index >= g.num_nodes()) {
                throw std::invalid_argument("fixed node " + std::to_string(strategy.index) +
                                            " out of range");
            }
            return strategy.index;
        case FixStrategy::Kind::None:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace qdcolor
