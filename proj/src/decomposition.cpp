#include "fomax/covers.hpp"

#include <algorithm>
#include <set>

namespace fomax {

int TreeDecomposition::width() const
{
    int w = -1;
    for (const auto& b : bags)
        w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

std::vector<std::vector<int>> TreeDecomposition::children() const
{
    std::vector<std::vector<int>> ch(bags.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (parent[i] >= 0)
            ch[static_cast<std::size_t>(parent[i])].push_back(static_cast<int>(i));
    return ch;
}

namespace {

using VSet = std::vector<Vertex>;  // sorted

// Components of G[w \ removed].
std::vector<VSet> split(const Graph& g, const VSet& w, const std::vector<char>& removed, std::vector<char>& inside)
{
    for (Vertex v : w)
        inside[static_cast<std::size_t>(v)] = 1;
    std::vector<VSet> comps;
    std::vector<char> seen(inside.size(), 0);
    for (Vertex s : w) {
        if (removed[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)])
            continue;
        VSet comp{s};
        seen[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (Vertex x : g.neighbors(comp[i]))
                if (inside[static_cast<std::size_t>(x)] && !removed[static_cast<std::size_t>(x)] && !seen[static_cast<std::size_t>(x)]) {
                    seen[static_cast<std::size_t>(x)] = 1;
                    comp.push_back(x);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    for (Vertex v : w)
        inside[static_cast<std::size_t>(v)] = 0;
    return comps;
}

bool balanced(const std::vector<VSet>& comps, std::size_t n)
{
    for (const auto& c : comps)
        if (3 * c.size() > 2 * n)
            return false;
    return true;
}

class Builder {
public:
    explicit Builder(const Graph& g) : g_(g), inside_(static_cast<std::size_t>(g.n()), 0) {}

    int build(const VSet& w, const VSet& boundary, int parent)
    {
        VSet sep = separator(w);
        bool leaf = sep.empty() || sep.size() + 1 >= w.size();
        VSet bag = leaf ? w : sep;
        bag.insert(bag.end(), boundary.begin(), boundary.end());
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        int id = static_cast<int>(td.bags.size());
        td.bags.push_back(bag);
        td.parent.push_back(parent);
        if (leaf)
            return id;
        std::vector<char> removed(static_cast<std::size_t>(g_.n()), 0);
        for (Vertex v : sep)
            removed[static_cast<std::size_t>(v)] = 1;
        VSet above = bag;
        for (const auto& comp : split(g_, w, removed, inside_)) {
            // Keep only boundary vertices adjacent to the component.
            std::vector<char> in_comp(static_cast<std::size_t>(g_.n()), 0);
            for (Vertex v : comp)
                in_comp[static_cast<std::size_t>(v)] = 1;
            VSet child_boundary;
            for (Vertex b : above)
                for (Vertex x : g_.neighbors(b))
                    if (in_comp[static_cast<std::size_t>(x)]) {
                        child_boundary.push_back(b);
                        break;
                    }
            build(comp, child_boundary, id);
        }
        return id;
    }

    TreeDecomposition td;

private:
    // Best of the BFS-layer and max-degree-removal heuristics; empty when w
    // is too small to split.
    VSet separator(const VSet& w)
    {
        if (w.size() <= 2)
            return {};
        VSet best;
        // (a) BFS layers from the lowest vertex; pick the smallest balanced layer.
        std::vector<int> layer(static_cast<std::size_t>(g_.n()), -1);
        for (Vertex v : w)
            inside_[static_cast<std::size_t>(v)] = 1;
        std::vector<VSet> layers{{w.front()}};
        layer[static_cast<std::size_t>(w.front())] = 0;
        while (true) {
            VSet next;
            for (Vertex v : layers.back())
                for (Vertex x : g_.neighbors(v))
                    if (inside_[static_cast<std::size_t>(x)] && layer[static_cast<std::size_t>(x)] < 0) {
                        layer[static_cast<std::size_t>(x)] = static_cast<int>(layers.size());
                        next.push_back(x);
                    }
            if (next.empty())
                break;
            std::sort(next.begin(), next.end());
            layers.push_back(std::move(next));
        }
        for (Vertex v : w)
            inside_[static_cast<std::size_t>(v)] = 0;
        for (const auto& l : layers) {
            std::vector<char> removed(static_cast<std::size_t>(g_.n()), 0);
            for (Vertex v : l)
                removed[static_cast<std::size_t>(v)] = 1;
            if (balanced(split(g_, w, removed, inside_), w.size()) && (best.empty() || l.size() < best.size()))
                best = l;
        }
        // (b) Remove max-degree vertices until balanced.
        std::vector<char> removed(static_cast<std::size_t>(g_.n()), 0);
        VSet greedy;
        while (!balanced(split(g_, w, removed, inside_), w.size())) {
            Vertex pick = -1;
            int pick_deg = -1;
            for (Vertex v : w) {
                if (removed[static_cast<std::size_t>(v)])
                    continue;
                int d = 0;
                for (Vertex x : g_.neighbors(v))
                    if (!removed[static_cast<std::size_t>(x)] && std::binary_search(w.begin(), w.end(), x))
                        ++d;
                if (d > pick_deg) {
                    pick_deg = d;
                    pick = v;
                }
            }
            removed[static_cast<std::size_t>(pick)] = 1;
            greedy.push_back(pick);
        }
        std::sort(greedy.begin(), greedy.end());
        if (best.empty() || greedy.size() < best.size())
            best = greedy;
        return best;
    }

    const Graph& g_;
    std::vector<char> inside_;
};

}  // namespace

TreeDecomposition separator_decomposition(const Graph& g)
{
    Builder b(g);
    int prev_root = -1;
    for (const auto& comp : components(g)) {
        int r = b.build(comp, {}, prev_root);
        if (prev_root < 0)
            b.td.root = r;
        prev_root = r;
    }
    if (b.td.bags.empty()) {
        b.td.bags.push_back({});
        b.td.parent.push_back(-1);
        b.td.root = 0;
    }
    return b.td;
}

std::optional<std::string> validate_tree_decomposition(const Graph& g, const TreeDecomposition& td)
{
    const int k = td.size();
    if (k == 0)
        return std::string("no nodes");
    if (td.parent.size() != td.bags.size())
        return std::string("parent/bag size mismatch");
    int roots = 0;
    for (int i = 0; i < k; ++i) {
        int p = td.parent[static_cast<std::size_t>(i)];
        if (p < 0)
            ++roots;
        else if (p >= k || p == i)
            return "node " + std::to_string(i) + " has invalid parent";
    }
    if (roots != 1 || td.root < 0 || td.parent[static_cast<std::size_t>(td.root)] != -1)
        return std::string("not a rooted tree: ") + std::to_string(roots) + " roots";
    // Every node must reach the root.
    for (int i = 0; i < k; ++i) {
        int x = i;
        int steps = 0;
        while (td.parent[static_cast<std::size_t>(x)] >= 0 && steps++ <= k)
            x = td.parent[static_cast<std::size_t>(x)];
        if (x != td.root)
            return "node " + std::to_string(i) + " does not reach the root";
    }
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(g.n()));
    for (int i = 0; i < k; ++i)
        for (Vertex v : td.bags[static_cast<std::size_t>(i)]) {
            if (v < 0 || v >= g.n())
                return "node " + std::to_string(i) + " holds out-of-range vertex " + std::to_string(v);
            holders[static_cast<std::size_t>(v)].push_back(i);
        }
    for (Vertex v = 0; v < g.n(); ++v)
        if (holders[static_cast<std::size_t>(v)].empty())
            return "vertex coverage: vertex " + std::to_string(v) + " is in no bag";
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (const auto& bag : td.bags)
            if (std::find(bag.begin(), bag.end(), u) != bag.end() && std::find(bag.begin(), bag.end(), v) != bag.end()) {
                ok = true;
                break;
            }
        if (!ok)
            return "edge coverage: edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag";
    }
    // Connectivity: exactly one holder of v has a parent outside the holders.
    for (Vertex v = 0; v < g.n(); ++v) {
        const auto& h = holders[static_cast<std::size_t>(v)];
        std::set<int> hs(h.begin(), h.end());
        int tops = 0;
        for (int i : h)
            if (td.parent[static_cast<std::size_t>(i)] < 0 || !hs.count(td.parent[static_cast<std::size_t>(i)]))
                ++tops;
        if (tops != 1)
            return "connectivity: bags holding vertex " + std::to_string(v) + " form " + std::to_string(tops) +
                   " subtrees";
    }
    if (k > std::max(1, g.n()))
        return "node count " + std::to_string(k) + " exceeds vertex count";
    return std::nullopt;
}

std::string dump_decomposition(const TreeDecomposition& td)
{
    std::string out;
    for (int i = 0; i < td.size(); ++i) {
        out += std::to_string(i) + " " + std::to_string(td.parent[static_cast<std::size_t>(i)]) + " |";
        for (Vertex v : td.bags[static_cast<std::size_t>(i)])
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

}  // namespace fomax
