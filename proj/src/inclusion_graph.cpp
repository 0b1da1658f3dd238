#include "shatter/inclusion_graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "shatter/shattering.hpp"

namespace shatter {

InclusionGraph::InclusionGraph(const SetSystem& system)
    : n_{system.universe_size()}, vertices_(system.begin(), system.end()), adjacency_(system.size()) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
    const auto universe = SetMask::universe(n_);
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto v = vertices_[i];
        for (int e : (universe - v).elements()) {
            auto it = index_.find(v.with(e));
            if (it == index_.end()) continue;
            edges_.push_back(Edge{v, v.with(e), e});
            adjacency_[i].push_back(it->second);
            adjacency_[it->second].push_back(i);
        }
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool InclusionGraph::has_edge(const Edge& e) const {
    return (e.from ^ e.to) == SetMask::singleton(e.label) && e.from.is_subset_of(e.to) && e.label >= 1 &&
           e.label <= n_ && has_vertex(e.from) && has_vertex(e.to);
}

std::size_t InclusionGraph::index(SetMask v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw InvalidInput("set " + to_string(v) + " is not a vertex of the graph");
    return it->second;
}

std::vector<Edge> InclusionGraph::edges_with_label(int label) const {
    std::vector<Edge> out;
    for (const auto& e : edges_) {
        if (e.label == label) out.push_back(e);
    }
    return out;
}

std::vector<int> InclusionGraph::distances_from(std::size_t source) const {
    std::vector<int> dist(vertices_.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (auto w : adjacency_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<int> graph_distance(const InclusionGraph& graph, SetMask f, SetMask g) {
    const auto from = graph.index(f);
    const auto to = graph.index(g);
    const int d = graph.distances_from(from)[to];
    if (d < 0) return std::nullopt;
    return d;
}

IsometryReport is_isometrically_embedded(const InclusionGraph& graph) {
    const auto verts = graph.vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto dist = graph.distances_from(i);
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (dist[j] != (verts[i] ^ verts[j]).size()) {
                return IsometryReport{false, std::make_pair(verts[i], verts[j])};
            }
        }
    }
    return IsometryReport{};
}

std::vector<SetMask> CubeCopy::vertices() const {
    std::vector<SetMask> out;
    for_each_subset(shape, [&](SetMask h) { out.push_back(h | base); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CubeCopy> find_cube_copies(const InclusionGraph& graph, SetMask shape) {
    if (!shape.fits_universe(graph.universe_size())) throw InvalidInput("shape " + to_string(shape) + " exceeds universe");
    std::vector<CubeCopy> out;
    switch (shape.size()) {
    case 0:
        for (auto v : graph.vertices()) out.push_back(CubeCopy{v, shape});
        break;
    case 1:
        for (const auto& e : graph.edges_with_label(shape.min_element())) out.push_back(CubeCopy{e.from, shape});
        break;
    case 2: {
        const int a = shape.min_element();
        const int b = shape.max_element();
        for (const auto& e : graph.edges_with_label(a)) {
            if (e.from.contains(b)) continue;
            if (graph.has_vertex(e.from.with(b)) && graph.has_vertex(e.to.with(b))) out.push_back(CubeCopy{e.from, shape});
        }
        break;
    }
    default: {
        if (graph.vertex_count() == 0) break;
        const SetSystem system(graph.universe_size(), {graph.vertices().begin(), graph.vertices().end()});
        for (const auto& w : strong_witnesses(system, shape)) out.push_back(CubeCopy{w.offset, shape});
        break;
    }
    }
    std::sort(out.begin(), out.end(), [](const CubeCopy& x, const CubeCopy& y) { return x.base < y.base; });
    return out;
}

bool is_labelled_tree(const InclusionGraph& graph) {
    if (graph.vertex_count() == 0) return false;
    if (graph.edges().size() != graph.vertex_count() - 1) return false;
    SetMask labels;
    for (const auto& e : graph.edges()) {
        if (labels.contains(e.label)) return false;
        labels = labels.with(e.label);
    }
    // |E| = |V| - 1 plus connectivity gives acyclicity.
    const auto dist = graph.distances_from(0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool check_vc1_characterization(const SetSystem& system) {
    if (system.empty()) throw InvalidInput("the VC-1 characterization needs a nonempty system");
    const bool tree = is_labelled_tree(InclusionGraph(system));
    const auto sh = shattered_sets(system);
    const bool expected = sh.size() == system.size() && vc_dimension(sh) <= 1;
    if (tree != expected) {
        throw InternalError("VC-1 characterization disagrees with extremality for a system of size " +
                            std::to_string(system.size()));
    }
    return tree;
}

std::vector<SetMask> FourCycleLadder::lower_rail() const {
    std::vector<SetMask> out;
    for (const auto& r : rungs) out.push_back(r.from);
    return out;
}

std::vector<SetMask> FourCycleLadder::upper_rail() const {
    std::vector<SetMask> out;
    for (const auto& r : rungs) out.push_back(r.to);
    return out;
}

std::optional<FourCycleLadder> find_ladder(const InclusionGraph& graph, const Edge& e1, const Edge& e2) {
    if (!graph.has_edge(e1) || !graph.has_edge(e2)) throw InvalidInput("ladder endpoints must be edges of the graph");
    if (e1.label != e2.label) {
        throw InvalidInput("ladder endpoints carry different labels " + std::to_string(e1.label) + " and " +
                           std::to_string(e2.label));
    }
    const int alpha = e1.label;
    const auto rungs = graph.edges_with_label(alpha);
    std::unordered_map<SetMask, std::size_t> by_from;
    for (std::size_t i = 0; i < rungs.size(); ++i) by_from.emplace(rungs[i].from, i);

    // BFS over rungs; two rungs are adjacent when their lower ends differ in
    // one element beta, i.e. they span a labelled 4-cycle.
    const auto start = by_from.at(e1.from);
    const auto goal = by_from.at(e2.from);
    std::vector<long> parent(rungs.size(), -2);
    parent[start] = -1;
    std::deque<std::size_t> queue{start};
    const auto universe = SetMask::universe(graph.universe_size()).without(alpha);
    while (!queue.empty() && parent[goal] == -2) {
        const auto u = queue.front();
        queue.pop_front();
        for (int beta : universe.elements()) {
            auto it = by_from.find(rungs[u].from.toggled(beta));
            if (it == by_from.end() || parent[it->second] != -2) continue;
            parent[it->second] = static_cast<long>(u);
            queue.push_back(it->second);
        }
    }
    if (parent[goal] == -2) return std::nullopt;

    FourCycleLadder ladder{alpha, {}, {}};
    for (long at = static_cast<long>(goal); at >= 0; at = parent[static_cast<std::size_t>(at)]) {
        ladder.rungs.push_back(rungs[static_cast<std::size_t>(at)]);
    }
    std::reverse(ladder.rungs.begin(), ladder.rungs.end());
    SetMask seen;
    for (std::size_t i = 0; i + 1 < ladder.rungs.size(); ++i) {
        const int beta = (ladder.rungs[i].from ^ ladder.rungs[i + 1].from).min_element();
        if (seen.contains(beta)) return std::nullopt;
        seen = seen.with(beta);
        ladder.side_labels.push_back(beta);
    }
    return ladder;
}

std::string export_dot(const InclusionGraph& graph) {
    std::ostringstream out;
    out << "digraph inclusion {\n";
    for (auto v : graph.vertices()) out << "  \"" << to_string(v) << "\";\n";
    for (const auto& e : graph.edges()) {
        out << "  \"" << to_string(e.from) << "\" -> \"" << to_string(e.to) << "\" [label=\"" << e.label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace shatter
