#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fomax/bitset.hpp"
#include "fomax/graph.hpp"

namespace fomax {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    std::string to_string() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};
bool operator<(const Rational& a, const Rational& b);

// Rooted forest on a vertex subset; every parent edge is a graph edge.
struct Scaffolding {
    Bitset members;
    std::vector<Vertex> parent;  // parent[v] == v for roots and non-members
    std::vector<int> depth;      // 1 for roots, 0 for non-members
    std::vector<Vertex> roots;
    int max_depth = 0;

    bool contains(Vertex v) const { return members.test(v); }
    bool is_ancestor_or_self(Vertex anc, Vertex v) const;
};

// DFS forest of G[members]; roots are the lowest vertex per component and
// neighbours are explored in increasing order.
Scaffolding dfs_scaffolding(const Graph& g, const Bitset& members);

// Checks the parent-edge and ancestor-descendant edge conditions.
std::optional<std::string> check_scaffolding(const Graph& g, const Scaffolding& f);

// color[v] in 0..a-1; every union of at most s classes has DFS depth <= cap.
std::vector<int> treedepth_coloring(const Graph& g, int s, int depth_cap);
int color_count(const std::vector<int>& coloring);

enum class CoverSource { Coloring, UserFile, WholeGraph };

struct Cover {
    std::vector<Bitset> members;
    int s = 1;
    Rational delta = {1, 1};
    CoverSource source = CoverSource::WholeGraph;
};

std::string to_string(CoverSource src);

// All unions of s colour classes (a single V(G) member when a <= s).
// Reported delta is the conservative 1/C(a,s).
Cover generic_cover_from_coloring(const Graph& g, const std::vector<int>& coloring, int s);

// min over vertex sets S with |S| = min(s, n) of (#members containing S)/|Z|.
Rational verify_genericity(int n, const std::vector<Bitset>& members, int s);

// Header "s delta_num delta_den", then one member per line.
Cover load_cover(std::string_view text, const Graph& g);
std::string dump_cover(const Cover& c);

std::vector<Scaffolding> scaffolding_system(const Graph& g, int s, int depth_cap = 0);

struct TreeDecomposition {
    std::vector<int> parent;  // -1 for the root
    std::vector<std::vector<Vertex>> bags;
    int root = -1;

    int size() const { return static_cast<int>(bags.size()); }
    int width() const;
    std::vector<std::vector<int>> children() const;
};

TreeDecomposition separator_decomposition(const Graph& g);

// nullopt when valid, else a description of the first violated axiom.
std::optional<std::string> validate_tree_decomposition(const Graph& g, const TreeDecomposition& td);

// One line per node: "id parent | bag".
std::string dump_decomposition(const TreeDecomposition& td);

}  // namespace fomax
