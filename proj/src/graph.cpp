#include "fomax/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>

#include "fomax/errors.hpp"

namespace fomax {

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : adj_(static_cast<std::size_t>(n))
{
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
        if (u == v)
            throw InputError("loop at vertex " + std::to_string(u));
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw InputError("duplicate edge");
    }
    m_ = static_cast<int>(edges.size());
}

bool Graph::adjacent(Vertex u, Vertex v) const
{
    const auto& list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const
{
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

namespace {

std::string strip_comment(const std::string& line)
{
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph load_graph(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    long long n = -1;
    long long m = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::set<std::pair<Vertex, Vertex>> seen;
    auto err = [&](const std::string& what) {
        throw InputError("graph line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (blank(line))
            continue;
        std::istringstream ls(line);
        long long a = 0;
        long long b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra))
            err("expected two integers");
        if (n < 0) {
            if (a < 0 || b < 0 || a > 10'000'000)
                err("bad header");
            n = a;
            m = b;
            continue;
        }
        if (a < 0 || b < 0 || a >= n || b >= n)
            err("vertex out of range");
        if (a == b)
            err("loop");
        const std::pair<Vertex, Vertex> e{static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))};
        if (!seen.insert(e).second)
            err("duplicate edge");
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    if (n < 0)
        throw InputError("graph: missing header");
    if (static_cast<long long>(edges.size()) != m)
        throw InputError("graph: header declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return Graph(static_cast<int>(n), edges);
}

std::string dump_graph(const Graph& g)
{
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& verts)
{
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < verts.size(); ++i)
        pos[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (Vertex w : g.neighbors(verts[i])) {
            int j = pos[static_cast<std::size_t>(w)];
            if (j > static_cast<int>(i))
                edges.emplace_back(static_cast<Vertex>(i), j);
        }
    return Graph(static_cast<int>(verts.size()), edges);
}

std::vector<std::vector<Vertex>> components(const Graph& g)
{
    std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0)
            continue;
        std::vector<Vertex> members{s};
        comp[static_cast<std::size_t>(s)] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (Vertex w : g.neighbors(members[i]))
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = static_cast<int>(out.size());
                    members.push_back(w);
                }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

}  // namespace fomax
