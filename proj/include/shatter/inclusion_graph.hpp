#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shatter/set_system.hpp"

namespace shatter {

/// A Hasse-diagram edge: to = from + {label}.
struct Edge {
    SetMask from;
    SetMask to;
    int label = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Directed, edge-labelled inclusion graph of a set system. Distance queries
/// work on the undirected version; directions and labels are kept for
/// structure queries.
class InclusionGraph {
  public:
    explicit InclusionGraph(const SetSystem& system);

    [[nodiscard]] int universe_size() const { return n_; }
    [[nodiscard]] std::span<const SetMask> vertices() const { return vertices_; }
    /// Sorted by (from, to).
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
    [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }

    [[nodiscard]] bool has_vertex(SetMask v) const { return index_.contains(v); }
    [[nodiscard]] bool has_edge(const Edge& e) const;
    /// Canonical index of v; throws InvalidInput for non-vertices.
    [[nodiscard]] std::size_t index(SetMask v) const;
    /// Undirected neighbours, by index.
    [[nodiscard]] std::span<const std::size_t> neighbors(std::size_t v) const { return adjacency_[v]; }
    /// Edges with the given label, in edge order.
    [[nodiscard]] std::vector<Edge> edges_with_label(int label) const;

    /// Undirected BFS distances from source; -1 marks unreachable vertices.
    [[nodiscard]] std::vector<int> distances_from(std::size_t source) const;

  private:
    int n_;
    std::vector<SetMask> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<SetMask, std::size_t> index_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// The inclusion graph of system.
inline InclusionGraph build_graph(const SetSystem& system) { return InclusionGraph(system); }

/// Shortest undirected path length between two vertices; nullopt when they
/// lie in different components. Throws InvalidInput for non-vertices.
std::optional<int> graph_distance(const InclusionGraph& graph, SetMask f, SetMask g);

struct IsometryReport {
    bool isometric = true;
    /// First pair (canonical order, first < second) whose graph distance
    /// differs from |f ^ g|.
    std::optional<std::pair<SetMask, SetMask>> violation;
};

IsometryReport is_isometrically_embedded(const InclusionGraph& graph);

/// The subgraph on {H | I : H subset of shape}.
struct CubeCopy {
    SetMask base;  // I
    SetMask shape; // S

    [[nodiscard]] std::vector<SetMask> vertices() const;
    friend bool operator==(const CubeCopy&, const CubeCopy&) = default;
};

/// Every copy of the cube on shape inside the graph, ascending by base.
std::vector<CubeCopy> find_cube_copies(const InclusionGraph& graph, SetMask shape);

/// Graph-side test: connected, acyclic and every edge label distinct.
bool is_labelled_tree(const InclusionGraph& graph);

/// is_labelled_tree on the system's graph, cross-checked against
/// (extremal and VC dimension <= 1). A disagreement throws InternalError.
bool check_vc1_characterization(const SetSystem& system);

/// A chain of labelled 4-cycles joining two edges that carry the same label.
struct FourCycleLadder {
    int label = 0;
    /// First rung is the query's e1, last is e2. Every rung carries label.
    std::vector<Edge> rungs;
    /// side_labels[i] labels the two rail edges between rungs i and i + 1.
    std::vector<int> side_labels;

    [[nodiscard]] std::vector<SetMask> lower_rail() const; // rung.from sequence
    [[nodiscard]] std::vector<SetMask> upper_rail() const; // rung.to sequence
};

/// Shortest ladder from e1 to e2 whose side labels are pairwise distinct,
/// or nullopt. Throws InvalidInput when e1, e2 are not graph edges or carry
/// different labels.
std::optional<FourCycleLadder> find_ladder(const InclusionGraph& graph, const Edge& e1, const Edge& e2);

/// Deterministic DOT digraph; nodes are set literals, edges carry label=.
std::string export_dot(const InclusionGraph& graph);

} // namespace shatter
