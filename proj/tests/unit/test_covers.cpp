#include "doctest.h"

#include <bit>
#include <functional>
#include <numeric>
#include <random>

#include "../support.hpp"
#include "fomax/covers.hpp"
#include "fomax/errors.hpp"

using namespace fomax;
using namespace fomax::testing;

namespace {

// Depth of the DFS forest of G[members]: lowest root per component,
// neighbours in increasing order.
int dfs_depth(const Graph& g, const std::vector<bool>& members)
{
    const auto n = static_cast<std::size_t>(g.n());
    std::vector<int> depth(n, 0);
    int best = 0;
    std::function<void(Vertex, int)> visit = [&](Vertex v, int d) {
        depth[static_cast<std::size_t>(v)] = d;
        best = std::max(best, d);
        for (Vertex w : g.neighbors(v))
            if (members[static_cast<std::size_t>(w)] && depth[static_cast<std::size_t>(w)] == 0)
                visit(w, d + 1);
    };
    for (Vertex v = 0; v < g.n(); ++v)
        if (members[static_cast<std::size_t>(v)] && depth[static_cast<std::size_t>(v)] == 0)
            visit(v, 1);
    return best;
}

// Largest DFS depth over unions of at most s colour classes.
int worst_union_depth(const Graph& g, const std::vector<int>& color, int s)
{
    int a = 0;
    for (int c : color)
        a = std::max(a, c + 1);
    int worst = 0;
    for (unsigned mask = 1; mask < (1u << a); ++mask) {
        if (std::popcount(mask) > s)
            continue;
        std::vector<bool> members(color.size());
        for (std::size_t v = 0; v < color.size(); ++v)
            members[v] = mask >> color[v] & 1;
        worst = std::max(worst, dfs_depth(g, members));
    }
    return worst;
}

Graph k4()
{
    return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

std::vector<Graph> cover_graphs()
{
    std::vector<Graph> out = small_corpus();
    std::mt19937_64 rng(77);
    for (int i = 0; i < 25; ++i)
        out.push_back(random_graph(rng, 6 + static_cast<int>(rng() % 3), 3.0));
    out.push_back(path(8));
    out.push_back(cycle(8));
    return out;
}

}  // namespace

TEST_CASE("treedepth_coloring: spec examples")
{
    CHECK(color_count(treedepth_coloring(Graph(5), 2, 4)) == 1);

    // P4: two colours suffice for s=2, cap=4 (the union is P4 itself).
    Graph p4 = path(4);
    CHECK(worst_union_depth(p4, {0, 1, 0, 1}, 2) <= 4);
    auto c = treedepth_coloring(p4, 2, 4);
    CHECK(worst_union_depth(p4, c, 2) <= 4);
    CHECK(color_count(c) <= 3);

    auto ck = treedepth_coloring(k4(), 2, 2);
    CHECK(color_count(ck) == 4);
    CHECK(worst_union_depth(k4(), ck, 2) == 2);

    CHECK_THROWS_AS(treedepth_coloring(p4, 0, 4), LogicError);
}

TEST_CASE("treedepth_coloring: every union of at most s classes is shallow")
{
    for (const Graph& g : cover_graphs())
        for (int s = 1; s <= 3; ++s) {
            int cap = 1 << s;
            auto c = treedepth_coloring(g, s, cap);
            REQUIRE(c.size() == static_cast<std::size_t>(g.n()));
            CHECK(color_count(c) <= std::max(1, g.n()));
            CHECK(worst_union_depth(g, c, s) <= cap);
        }
}

TEST_CASE("generic_cover_from_coloring: spec examples")
{
    Graph p3 = path(3);
    Cover whole = generic_cover_from_coloring(p3, {0, 1, 0}, 2);
    REQUIRE(whole.members.size() == 1);
    CHECK(whole.members[0] == Bitset::full(3));
    CHECK(whole.delta == Rational{1, 1});
    CHECK(whole.source == CoverSource::WholeGraph);

    Cover singles = generic_cover_from_coloring(Graph(3), {0, 1, 2}, 1);
    CHECK(singles.members.size() == 3);
    CHECK(singles.delta == Rational::make(1, 3));
    CHECK(brute_genericity(3, singles.members, 1) == Rational::make(1, 3));

    // P3 properly 2-coloured with colour 1 left empty, so a = 3.
    Cover pairs = generic_cover_from_coloring(p3, {0, 2, 0}, 2);
    CHECK(pairs.members.size() == 3);
    CHECK(pairs.delta == Rational::make(1, 3));
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = u + 1; v < 3; ++v) {
            int holders = 0;
            for (const auto& m : pairs.members)
                holders += m.test(u) && m.test(v);
            CHECK(holders >= 1);
        }
}

TEST_CASE("generic covers meet their reported delta")
{
    for (const Graph& g : cover_graphs())
        for (int s = 1; s <= 3; ++s) {
            auto c = treedepth_coloring(g, s, 1 << s);
            if (color_count(c) > 12)
                continue;
            Cover cv = generic_cover_from_coloring(g, c, s);
            Rational actual = brute_genericity(g.n(), cv.members, s);
            CHECK_FALSE(actual < cv.delta);
            CHECK(verify_genericity(g.n(), cv.members, s) == actual);
        }
}

TEST_CASE("generic_cover_from_coloring: colour guard")
{
    std::vector<int> many(21);
    std::iota(many.begin(), many.end(), 0);
    CHECK_THROWS_AS(generic_cover_from_coloring(Graph(21), many, 2), GuardError);
}

TEST_CASE("scaffolding_system: spec examples")
{
    auto k2 = scaffolding_system(path(2), 2);
    bool found = false;
    for (const auto& f : k2)
        if (f.contains(0) && f.contains(1))
            found = f.parent[1] == 0 || f.parent[0] == 1;
    CHECK(found);

    auto edgeless = scaffolding_system(Graph(4), 4);
    REQUIRE(edgeless.size() == 1);
    CHECK(edgeless[0].roots.size() == 4);
    CHECK(edgeless[0].max_depth == 1);

    Graph p4 = path(4);
    auto sys = scaffolding_system(p4, 2);
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) {
            bool covered = false;
            for (const auto& f : sys)
                covered = covered || (f.contains(u) && f.contains(v));
            CHECK(covered);
        }
}

TEST_CASE("scaffolding systems: genericity, edge condition, depth")
{
    for (const Graph& g : cover_graphs())
        for (int s = 1; s <= 2; ++s) {
            auto sys = scaffolding_system(g, s);
            for (const auto& f : sys) {
                CHECK_FALSE(check_scaffolding(g, f).has_value());
                CHECK(f.max_depth <= (1 << s));
                for (auto [u, v] : g.edges())
                    if (f.contains(u) && f.contains(v))
                        CHECK((f.is_ancestor_or_self(u, v) || f.is_ancestor_or_self(v, u)));
            }
            std::vector<Bitset> members;
            for (const auto& f : sys)
                members.push_back(f.members);
            CHECK(brute_genericity(g.n(), members, s).num > 0);
        }
}

TEST_CASE("check_scaffolding flags a cross edge")
{
    Graph p3 = path(3);
    Scaffolding f = dfs_scaffolding(p3, Bitset::full(3));
    CHECK_FALSE(check_scaffolding(p3, f).has_value());
    // Make 0 and 2 both roots with 1 under 0: edge 1-2 crosses trees.
    f.parent = {0, 0, 2};
    f.depth = {1, 2, 1};
    f.roots = {0, 2};
    CHECK(check_scaffolding(p3, f).has_value());
}

TEST_CASE("separator_decomposition: spec examples")
{
    auto k1 = separator_decomposition(Graph(1));
    REQUIRE(k1.size() == 1);
    CHECK(k1.bags[0] == std::vector<Vertex>{0});

    Graph p7 = path(7);
    auto tp = separator_decomposition(p7);
    CHECK_FALSE(validate_tree_decomposition(p7, tp).has_value());
    CHECK(tp.width() <= 2);

    auto tk = separator_decomposition(k4());
    CHECK_FALSE(validate_tree_decomposition(k4(), tk).has_value());
    CHECK(tk.width() == 3);
}

TEST_CASE("separator_decomposition is always valid")
{
    std::mt19937_64 rng(31);
    std::vector<Graph> graphs = cover_graphs();
    for (int i = 0; i < 40; ++i)
        graphs.push_back(random_graph(rng, 10 + static_cast<int>(rng() % 40), 3.0));
    for (const Graph& g : graphs) {
        auto td = separator_decomposition(g);
        auto err = validate_tree_decomposition(g, td);
        CHECK_MESSAGE(!err.has_value(), err.value_or(""));
    }
}

TEST_CASE("validate_tree_decomposition: constructed violations")
{
    Graph p3 = path(3);
    TreeDecomposition ok;
    ok.parent = {-1, 0};
    ok.bags = {{0, 1}, {1, 2}};
    ok.root = 0;
    CHECK_FALSE(validate_tree_decomposition(p3, ok).has_value());

    TreeDecomposition split;
    split.parent = {-1, 0, 1};
    split.bags = {{1}, {0}, {1, 2}};
    split.root = 0;
    auto e1 = validate_tree_decomposition(p3, split);
    REQUIRE(e1.has_value());
    CHECK(e1->find("edge coverage") == 0);

    TreeDecomposition disconnected;
    disconnected.parent = {-1, 0, 1};
    disconnected.bags = {{0, 1}, {0}, {1, 2}};
    disconnected.root = 0;
    auto e2 = validate_tree_decomposition(p3, disconnected);
    REQUIRE(e2.has_value());
    CHECK(e2->find("connectivity") == 0);

    TreeDecomposition missing;
    missing.parent = {-1, 0};
    missing.bags = {{0, 1}, {1}};
    missing.root = 0;
    auto e3 = validate_tree_decomposition(p3, missing);
    REQUIRE(e3.has_value());
    CHECK(e3->find("vertex coverage") == 0);
}

TEST_CASE("load_cover")
{
    Graph p3 = path(3);
    Cover c = load_cover("1 2 3\n0 1\n1 2\n0 2\n", p3);
    CHECK(c.source == CoverSource::UserFile);
    CHECK(c.members.size() == 3);
    CHECK(c.delta == Rational::make(2, 3));
    CHECK(verify_genericity(3, c.members, 1) == Rational::make(2, 3));

    Cover whole = load_cover("3 1 1\n0 1 2\n", p3);
    CHECK(whole.delta == Rational{1, 1});

    CHECK_THROWS_AS(load_cover("", p3), InputError);
    CHECK_THROWS_AS(load_cover("1 1 1\n", p3), InputError);
    CHECK_THROWS_AS(load_cover("1 1 1\n0 5\n", p3), InputError);
    CHECK_THROWS_AS(load_cover("1 1 1\n0 x\n", p3), InputError);
    // Declared delta above the true genericity.
    CHECK_THROWS_AS(load_cover("1 1 1\n0 1\n1 2\n0 2\n", p3), InputError);
    CHECK(dump_cover(c).rfind("1 2 3\n", 0) == 0);
}
