#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdcolor {

using NodeId = std::size_t;

struct Edge {
    NodeId u;  // u < v
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class ParseErrorKind {
    MissingHeader,
    MalformedHeader,
    MalformedLine,
    IndexOutOfRange,
    SelfLoop,
    BadToken,
    EmptyGraph,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);

    ParseErrorKind kind() const noexcept { return kind_; }
    // 1-based line of the offending input, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

// Undirected simple graph without isolated nodes. Nodes are 0..num_nodes()-1;
// original_id(i) is the identifier the node carried in the input file
// (1-based for DIMACS, arbitrary for edge lists).
class Graph {
public:
    Graph() = default;

    // Builds from raw pairs given in terms of arbitrary non-negative IDs.
    // Direction is ignored; duplicates and self-loops are dropped, IDs are
    // compacted in ascending order. Throws ParseError(EmptyGraph) when no
    // edge survives.
    static Graph from_pairs(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs);

    std::size_t num_nodes() const noexcept { return degrees_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
    std::size_t degree(NodeId i) const { return degrees_.at(i); }
    std::uint64_t original_id(NodeId i) const { return original_ids_.at(i); }
    const std::vector<std::uint64_t>& original_ids() const noexcept { return original_ids_; }

    // Lowest-index node of maximal degree.
    NodeId j_max() const noexcept { return j_max_; }
    std::size_t max_degree() const noexcept;
    double density() const noexcept;

private:
    std::vector<Edge> edges_;  // sorted lexicographically
    std::vector<std::size_t> degrees_;
    std::vector<std::uint64_t> original_ids_;
    NodeId j_max_ = 0;
};

enum class GraphFormat { Auto, Dimacs, EdgeList };

Graph parse_dimacs(std::istream& in);
Graph parse_edge_list(std::istream& in);
Graph parse_dimacs_string(const std::string& text);
Graph parse_edge_list_string(const std::string& text);

// `.col` selects DIMACS under Auto, anything else the edge-list reader.
// Throws std::runtime_error when the file cannot be opened.
Graph load_graph(const std::filesystem::path& path, GraphFormat format = GraphFormat::Auto);

GraphFormat parse_format(const std::string& name);

// Compact indices, 1-based as DIMACS requires.
std::string write_dimacs(const Graph& g);
// Original IDs.
std::string write_edge_list(const Graph& g);

struct FixStrategy {
    enum class Kind { MaxDegree, DegreeOne, Explicit, None };
    Kind kind = Kind::MaxDegree;
    NodeId index = 0;  // Explicit only

    static FixStrategy max_degree() { return {Kind::MaxDegree, 0}; }
    static FixStrategy degree_one() { return {Kind::DegreeOne, 0}; }
    static FixStrategy explicit_node(NodeId i) { return {Kind::Explicit, i}; }
    static FixStrategy none() { return {Kind::None, 0}; }

    friend bool operator==(const FixStrategy&, const FixStrategy&) = default;
};

std::string to_string(const FixStrategy& s);
// "maxdegree", "degreeone", "none" or a node index.
FixStrategy parse_fix_strategy(const std::string& text);

// Returns an empty optional for Kind::None. Throws std::invalid_argument for
// DegreeOne without a degree-1 node and for an out-of-range explicit index.
std::optional<NodeId> select_fixed_node(const Graph& g, const FixStrategy& strategy);

}  // namespace qdcolor
