#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "fomax/bitset.hpp"

namespace fomax {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}
    // Throws InputError on loops, duplicates, or out-of-range ends.
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    int n() const { return static_cast<int>(adj_.size()); }
    int m() const { return m_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool adjacent(Vertex u, Vertex v) const;
    std::vector<std::pair<Vertex, Vertex>> edges() const;

private:
    std::vector<std::vector<Vertex>> adj_;
    int m_ = 0;
};

// "n m" header then m lines "u v"; '#' starts a comment.
Graph load_graph(std::string_view text);
std::string dump_graph(const Graph& g);

// G[verts], vertices renumbered 0..k-1 in the order given.
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& verts);

// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> components(const Graph& g);

}  // namespace fomax
