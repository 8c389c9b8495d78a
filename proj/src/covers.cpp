#include "fomax/covers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "fomax/errors.hpp"
#include "fomax/orientation.hpp"

namespace fomax {

Rational Rational::make(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw LogicError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0)
        g = 1;
    return Rational{num / g, den / g};
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

bool operator<(const Rational& a, const Rational& b)
{
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

bool Scaffolding::is_ancestor_or_self(Vertex anc, Vertex v) const
{
    if (!contains(anc) || !contains(v))
        return false;
    while (depth[static_cast<std::size_t>(v)] > depth[static_cast<std::size_t>(anc)])
        v = parent[static_cast<std::size_t>(v)];
    return v == anc;
}

Scaffolding dfs_scaffolding(const Graph& g, const Bitset& members)
{
    const auto n = static_cast<std::size_t>(g.n());
    Scaffolding f;
    f.members = members;
    f.parent.resize(n);
    std::iota(f.parent.begin(), f.parent.end(), 0);
    f.depth.assign(n, 0);
    std::vector<std::size_t> next_nb(n, 0);
    for (Vertex root = 0; root < g.n(); ++root) {
        if (!members.test(root) || f.depth[static_cast<std::size_t>(root)] != 0)
            continue;
        f.roots.push_back(root);
        f.depth[static_cast<std::size_t>(root)] = 1;
        std::vector<Vertex> stack{root};
        while (!stack.empty()) {
            Vertex v = stack.back();
            const auto& nb = g.neighbors(v);
            auto& i = next_nb[static_cast<std::size_t>(v)];
            while (i < nb.size() && (!members.test(nb[i]) || f.depth[static_cast<std::size_t>(nb[i])] != 0))
                ++i;
            if (i == nb.size()) {
                stack.pop_back();
                continue;
            }
            Vertex w = nb[i++];
            f.parent[static_cast<std::size_t>(w)] = v;
            f.depth[static_cast<std::size_t>(w)] = f.depth[static_cast<std::size_t>(v)] + 1;
            f.max_depth = std::max(f.max_depth, f.depth[static_cast<std::size_t>(w)]);
            stack.push_back(w);
        }
        f.max_depth = std::max(f.max_depth, 1);
    }
    return f;
}

std::optional<std::string> check_scaffolding(const Graph& g, const Scaffolding& f)
{
    for (Vertex v = 0; v < g.n(); ++v) {
        if (!f.contains(v))
            continue;
        Vertex p = f.parent[static_cast<std::size_t>(v)];
        if (p != v && !g.adjacent(p, v))
            return "parent edge " + std::to_string(p) + "-" + std::to_string(v) + " is not a graph edge";
        for (Vertex w : g.neighbors(v))
            if (f.contains(w) && !f.is_ancestor_or_self(v, w) && !f.is_ancestor_or_self(w, v))
                return "edge " + std::to_string(v) + "-" + std::to_string(w) + " joins unrelated vertices";
    }
    return std::nullopt;
}

int color_count(const std::vector<int>& coloring)
{
    int a = 0;
    for (int c : coloring)
        a = std::max(a, c + 1);
    return a;
}

namespace {

// Calls fn on every k-subset of {0..a-1} in lexicographic order.
void for_each_combination(int a, int k, const std::function<void(const std::vector<int>&)>& fn)
{
    if (k > a || k < 0)
        return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == a - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

std::int64_t binomial(int a, int k)
{
    if (k < 0 || k > a)
        return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (a - k + i) / i;
    return r;
}

Bitset union_of(const std::vector<int>& coloring, const std::vector<int>& classes, std::size_t n)
{
    Bitset u(n);
    for (std::size_t v = 0; v < n; ++v)
        if (std::find(classes.begin(), classes.end(), coloring[v]) != classes.end())
            u.set(static_cast<Vertex>(v));
    return u;
}

}  // namespace

std::vector<int> treedepth_coloring(const Graph& g, int s, int depth_cap)
{
    if (s < 1 || depth_cap < 1)
        throw LogicError("treedepth_coloring needs s >= 1 and depth_cap >= 1");
    const auto n = static_cast<std::size_t>(g.n());
    // Distance-2 greedy colouring, vertices taken in reverse degeneracy order.
    Orientation o = degeneracy_orientation(g);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return o.rank[static_cast<std::size_t>(a)] > o.rank[static_cast<std::size_t>(b)];
    });
    std::vector<int> color(n, -1);
    for (Vertex v : order) {
        std::vector<bool> used(n + 1, false);
        auto mark = [&](Vertex w) {
            if (w != v && color[static_cast<std::size_t>(w)] >= 0)
                used[static_cast<std::size_t>(color[static_cast<std::size_t>(w)])] = true;
        };
        for (Vertex w : g.neighbors(v)) {
            mark(w);
            for (Vertex x : g.neighbors(w))
                mark(x);
        }
        int c = 0;
        while (used[static_cast<std::size_t>(c)])
            ++c;
        color[static_cast<std::size_t>(v)] = c;
    }
    if (n == 0)
        return color;
    while (true) {
        int a = color_count(color);
        if (a > static_cast<int>(n))
            throw GuardError("treedepth_coloring: colour count exceeds vertex count");
        std::vector<int> offending;
        Scaffolding bad;
        for_each_combination(a, std::min(s, a), [&](const std::vector<int>& classes) {
            if (!offending.empty())
                return;
            Scaffolding f = dfs_scaffolding(g, union_of(color, classes, n));
            if (f.max_depth > depth_cap) {
                offending = classes;
                bad = std::move(f);
            }
        });
        if (offending.empty())
            return color;
        // Components of the union whose DFS tree is too deep.
        std::vector<Vertex> root_of(n);
        std::vector<bool> too_deep(n, false);
        std::vector<Vertex> by_depth = bad.members.members();
        std::stable_sort(by_depth.begin(), by_depth.end(), [&](Vertex x, Vertex y) {
            return bad.depth[static_cast<std::size_t>(x)] < bad.depth[static_cast<std::size_t>(y)];
        });
        for (Vertex v : by_depth) {
            Vertex p = bad.parent[static_cast<std::size_t>(v)];
            root_of[static_cast<std::size_t>(v)] = p == v ? v : root_of[static_cast<std::size_t>(p)];
            if (bad.depth[static_cast<std::size_t>(v)] > depth_cap)
                too_deep[static_cast<std::size_t>(root_of[static_cast<std::size_t>(v)])] = true;
        }
        // Split the offending class with most vertices there: every other
        // such vertex, by depth, moves to a fresh colour.
        std::map<int, std::vector<Vertex>> inside;
        for (Vertex v : by_depth)
            if (too_deep[static_cast<std::size_t>(root_of[static_cast<std::size_t>(v)])])
                inside[color[static_cast<std::size_t>(v)]].push_back(v);
        int largest = -1;
        std::size_t best = 0;
        for (const auto& [c, vs] : inside)
            if (vs.size() > best) {
                best = vs.size();
                largest = c;
            }
        if (best <= 1)
            throw GuardError("treedepth_coloring: singleton classes still exceed the depth cap");
        const auto& vs = inside[largest];
        for (std::size_t i = 1; i < vs.size(); i += 2)
            color[static_cast<std::size_t>(vs[i])] = a;
    }
}

std::string to_string(CoverSource src)
{
    switch (src) {
    case CoverSource::Coloring:
        return "coloring";
    case CoverSource::UserFile:
        return "user-file";
    case CoverSource::WholeGraph:
        return "whole-graph";
    }
    return "?";
}

Cover generic_cover_from_coloring(const Graph& g, const std::vector<int>& coloring, int s)
{
    const auto n = static_cast<std::size_t>(g.n());
    int a = color_count(coloring);
    Cover c;
    c.s = s;
    if (a <= s) {
        c.members.push_back(Bitset::full(n));
        c.delta = {1, 1};
        c.source = CoverSource::WholeGraph;
        return c;
    }
    if (a > 20)
        throw GuardError("cover from colouring: " + std::to_string(a) + " colours exceeds the limit of 20");
    for_each_combination(a, s, [&](const std::vector<int>& classes) { c.members.push_back(union_of(coloring, classes, n)); });
    c.delta = Rational::make(1, binomial(a, s));
    c.source = CoverSource::Coloring;
    return c;
}

Rational verify_genericity(int n, const std::vector<Bitset>& members, int s)
{
    if (members.empty())
        throw InputError("empty cover");
    const std::size_t z = members.size();
    // holders[v] = set of member indices containing v.
    std::vector<Bitset> holders(static_cast<std::size_t>(n), Bitset(z));
    for (std::size_t i = 0; i < z; ++i)
        members[i].for_each([&](Vertex v) { holders[static_cast<std::size_t>(v)].set(static_cast<Vertex>(i)); });
    int k = std::min(s, n);
    if (k <= 0)
        return Rational{1, 1};
    std::size_t worst = z;
    std::vector<Bitset> prefix(static_cast<std::size_t>(k) + 1, Bitset::full(z));
    std::function<void(int, Vertex)> rec = [&](int depth, Vertex start) {
        if (depth == k) {
            worst = std::min(worst, prefix[static_cast<std::size_t>(depth)].count());
            return;
        }
        for (Vertex v = start; v < n; ++v) {
            if (n - v < k - depth)
                break;
            if (depth + 1 == k) {
                worst = std::min(worst, prefix[static_cast<std::size_t>(depth)].intersection_count(holders[static_cast<std::size_t>(v)]));
                continue;
            }
            prefix[static_cast<std::size_t>(depth) + 1] = prefix[static_cast<std::size_t>(depth)] & holders[static_cast<std::size_t>(v)];
            rec(depth + 1, v + 1);
        }
    };
    rec(0, 0);
    return Rational::make(static_cast<std::int64_t>(worst), static_cast<std::int64_t>(z));
}

Cover load_cover(std::string_view text, const Graph& g)
{
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool have_header = false;
    Cover c;
    c.source = CoverSource::UserFile;
    while (std::getline(in, line)) {
        ++lineno;
        auto err = [&](const std::string& what) {
            throw InputError("cover line " + std::to_string(lineno) + ": " + what);
        };
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.resize(pos);
        std::istringstream ls(line);
        std::vector<long long> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                long long v = std::stoll(tok, &used);
                if (used != tok.size())
                    err("bad integer '" + tok + "'");
                nums.push_back(v);
            } catch (const std::logic_error&) {
                err("bad integer '" + tok + "'");
            }
        }
        if (!have_header) {
            if (nums.empty())
                continue;
            if (nums.size() != 3 || nums[0] < 1 || nums[1] < 0 || nums[2] < 1 || nums[1] > nums[2])
                err("expected header 's delta_num delta_den'");
            c.s = static_cast<int>(nums[0]);
            c.delta = Rational::make(nums[1], nums[2]);
            have_header = true;
            continue;
        }
        if (nums.empty())
            continue;
        Bitset member(static_cast<std::size_t>(g.n()));
        for (long long v : nums) {
            if (v < 0 || v >= g.n())
                err("vertex out of range");
            member.set(static_cast<Vertex>(v));
        }
        c.members.push_back(std::move(member));
    }
    if (!have_header || c.members.empty())
        throw InputError("empty cover");
    if (c.s <= 3) {
        Rational actual = verify_genericity(g.n(), c.members, c.s);
        if (actual < c.delta)
            throw InputError("cover is only (" + std::to_string(c.s) + "," + actual.to_string() +
                             ")-generic, below the declared " + c.delta.to_string());
    }
    return c;
}

std::string dump_cover(const Cover& c)
{
    std::string out = std::to_string(c.s) + " " + std::to_string(c.delta.num) + " " + std::to_string(c.delta.den) + "\n";
    for (const auto& m : c.members) {
        bool first = true;
        m.for_each([&](Vertex v) {
            out += (first ? "" : " ") + std::to_string(v);
            first = false;
        });
        out += "\n";
    }
    return out;
}

std::vector<Scaffolding> scaffolding_system(const Graph& g, int s, int depth_cap)
{
    if (depth_cap <= 0)
        depth_cap = s >= 30 ? (1 << 30) : (1 << s);
    auto coloring = treedepth_coloring(g, s, depth_cap);
    Cover cover = generic_cover_from_coloring(g, coloring, s);
    std::vector<Scaffolding> out;
    for (const auto& m : cover.members)
        out.push_back(dfs_scaffolding(g, m));
    return out;
}

}  // namespace fomax
