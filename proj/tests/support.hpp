#pragma once
// Shared fixtures for unit and acceptance tests: the formula corpus, small
// graph families and exhaustive tuple enumeration.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <map>
#include <set>

#include "fomax/covers.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/graph.hpp"
#include "fomax/signature.hpp"
#include "fomax/templates.hpp"
#include "fomax/tuple.hpp"

namespace fomax::testing {

struct CorpusFormula {
    std::string name;
    std::string text;
    bool monotone;
};

inline const std::vector<CorpusFormula>& corpus()
{
    static const std::vector<CorpusFormula> c = {
        {"independent-set", "(forall x y (implies (and (X 1 x) (X 1 y)) (not (E x y))))", true},
        {"distance-2-independent-set",
         "(forall x y (implies (and (X 1 x) (X 1 y) (not (eq x y)))"
         " (and (not (E x y)) (not (exists z (and (E x z) (E y z)))))))",
         true},
        {"dominating-set", "(forall x (or (X 1 x) (exists y (and (X 1 y) (E x y)))))", false},
        {"induced-matching",
         "(forall x (implies (X 1 x) (and (exists y (and (X 1 y) (E x y)))"
         " (forall y z (implies (and (X 1 y) (X 1 z) (E x y) (E x z)) (eq y z))))))",
         false},
    };
    return c;
}

// At most one selected neighbour per selected vertex; closed under subsets.
inline const CorpusFormula& induced_matching_relaxed()
{
    static const CorpusFormula f = {
        "induced-matching-relaxed",
        "(forall x y z (implies (and (X 1 x) (X 1 y) (X 1 z) (E x y) (E x z)) (eq y z)))", true};
    return f;
}

// All connected labelled graphs on n vertices (2^C(n,2) edge sets scanned).
inline std::vector<Graph> connected_graphs(int n)
{
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            slots.emplace_back(u, v);
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1)
                edges.push_back(slots[i]);
        Graph g(n, edges);
        if (n <= 1 || components(g).size() == 1)
            out.push_back(std::move(g));
    }
    return out;
}

// One connected graph per isomorphism class: canonical form is the minimum
// adjacency bitmask over all vertex permutations (n <= 5 only).
inline std::vector<Graph> connected_graphs_up_to_iso(int n)
{
    std::vector<Graph> out;
    std::vector<std::uint64_t> seen;
    for (auto& g : connected_graphs(n)) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            perm[static_cast<std::size_t>(i)] = i;
        std::uint64_t best = ~std::uint64_t{0};
        do {
            std::uint64_t code = 0;
            for (auto [u, v] : g.edges()) {
                int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
                if (a > b)
                    std::swap(a, b);
                code |= std::uint64_t{1} << (a * n + b);
            }
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (std::find(seen.begin(), seen.end(), best) == seen.end()) {
            seen.push_back(best);
            out.push_back(std::move(g));
        }
    }
    return out;
}

// Seeded random graph with n vertices and average degree at most avg_deg.
inline Graph random_graph(std::mt19937_64& rng, int n, double avg_deg)
{
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            slots.emplace_back(u, v);
    std::shuffle(slots.begin(), slots.end(), rng);
    auto m = static_cast<std::size_t>(avg_deg * n / 2.0);
    std::uniform_int_distribution<std::size_t> pick(0, std::min(m, slots.size()));
    slots.resize(pick(rng));
    return Graph(n, slots);
}

// The small corpus: connected graphs n <= 5 (up to isomorphism) and 50
// seeded random graphs with 1 <= n <= 7.
inline std::vector<Graph> small_corpus(std::uint64_t seed = 20240611)
{
    std::vector<Graph> out;
    for (int n = 1; n <= 5; ++n)
        for (auto& g : connected_graphs_up_to_iso(n))
            out.push_back(std::move(g));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(1, 7);
    for (int i = 0; i < 50; ++i) {
        int n = size(rng);
        out.push_back(random_graph(rng, n, 3.0));
    }
    return out;
}

inline Graph path(int n)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 0; v + 1 < n; ++v)
        e.emplace_back(v, v + 1);
    return Graph(n, e);
}

inline Graph cycle(int n)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 0; v < n; ++v)
        e.emplace_back(v, (v + 1) % n);
    return Graph(n, e);
}

// Calls fn on every ITuple with the given indices over n vertices.
inline void for_each_tuple(const IndexSet& indices, int n, const std::function<void(const ITuple&)>& fn)
{
    ITuple a(indices, static_cast<std::size_t>(n));
    const auto per = std::uint64_t{1} << indices.size();
    std::vector<Pattern> chi(static_cast<std::size_t>(n), 0);
    while (true) {
        for (Vertex v = 0; v < n; ++v)
            a.set_chi(v, chi[static_cast<std::size_t>(v)]);
        fn(a);
        std::size_t k = 0;
        while (k < chi.size() && ++chi[k] == per)
            chi[k++] = 0;
        if (k == chi.size())
            break;
    }
}

// Backtracking search for an injective, root-preserving, parent-preserving
// map from the template forest into F that sends each placed node to the
// forced vertex.
inline bool backtrack_match(const Scaffolding& f, const Template& t, int n, const std::map<int, Vertex>& forced)
{
    std::vector<Vertex> h(static_cast<std::size_t>(t.size()), -1);
    std::set<Vertex> used;
    std::function<bool(int)> rec = [&](int q) -> bool {
        if (q == t.size()) {
            for (int node = 0; node < t.size(); ++node) {
                Vertex v = h[static_cast<std::size_t>(node)];
                Vertex up = f.parent[static_cast<std::size_t>(v)];
                int p = t.parent[static_cast<std::size_t>(node)];
                if (p < 0 ? up != v : (up == v || up != h[static_cast<std::size_t>(p)]))
                    return false;
            }
            return true;
        }
        auto it = forced.find(q);
        for (Vertex v = 0; v < n; ++v) {
            if (!f.contains(v) || used.count(v) || (it != forced.end() && it->second != v))
                continue;
            h[static_cast<std::size_t>(q)] = v;
            used.insert(v);
            if (rec(q + 1))
                return true;
            used.erase(v);
        }
        return false;
    };
    return rec(0);
}

// min over k-subsets S (k = min(s, n)) of #{members containing S} / |Z|.
inline Rational brute_genericity(int n, const std::vector<Bitset>& members, int s)
{
    const int k = std::min(s, n);
    auto worst = static_cast<std::int64_t>(members.size());
    std::vector<Vertex> pick(static_cast<std::size_t>(k));
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            std::int64_t hits = 0;
            for (const auto& m : members)
                hits += std::all_of(pick.begin(), pick.end(), [&](Vertex v) { return m.test(v); });
            worst = std::min(worst, hits);
            return;
        }
        for (int v = start; v < n; ++v) {
            pick[static_cast<std::size_t>(depth)] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
    return Rational::make(worst, static_cast<std::int64_t>(members.size()));
}

struct TemplateFixture {
    Graph g;
    Scaffolding f;
    Interpretation interp;
    CounterSignature sigma;
};

// Scaffolding of G[members] plus guarded f (DFS parent over G) and g
// (smallest neighbour, or self).
inline TemplateFixture make_fixture(const Graph& g, const Bitset& members)
{
    TemplateFixture fx{g, dfs_scaffolding(g, members), {}, {}};
    Scaffolding whole = dfs_scaffolding(g, Bitset::full(static_cast<std::size_t>(g.n())));
    std::vector<Vertex> low(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v)
        low[static_cast<std::size_t>(v)] = g.neighbors(v).empty() ? v : g.neighbors(v).front();
    fx.interp.funcs["f"] = whole.parent;
    fx.interp.funcs["g"] = low;
    fx.interp.funcs["prt"] = fx.f.parent;
    fx.interp.preds["in"] = fx.f.members;
    for (const char* fn : {"f", "g", "prt"})
        fx.sigma.add_function(fn);
    fx.sigma.add_predicate("in");
    return fx;
}

struct MatchSweep {
    std::size_t checked = 0;
    std::size_t matcher_mismatches = 0;
    std::size_t formula_mismatches = 0;
};

// Every assignment of the variables of x: backtracking oracle vs
// matches_template vs tau_{T,F} evaluated naively.
inline MatchSweep sweep_assignments(const TemplateFixture& fx, const Template& t, const TermSet& x)
{
    MatchSweep out;
    std::set<std::string> vars;
    for (const Term& term : x)
        vars.insert(term.var);
    std::vector<std::string> names(vars.begin(), vars.end());
    FormulaPtr tau = template_match_formula(t, "in", "prt");
    ITuple a({1}, static_cast<std::size_t>(fx.g.n()));
    std::map<std::string, Vertex> env;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == names.size()) {
            std::map<int, Vertex> forced;
            bool clash = false;
            for (const auto& [term, node] : t.placement) {
                Vertex v = term_value(fx.interp, term, env);
                auto [it, fresh] = forced.emplace(node, v);
                clash = clash || (!fresh && it->second != v);
            }
            bool oracle = !clash && backtrack_match(fx.f, t, fx.g.n(), forced);
            out.matcher_mismatches += oracle != matches_template(fx.f, t, fx.interp, env);
            out.formula_mismatches += oracle != evaluate_naive(fx.g, fx.sigma, fx.interp, a, tau, env);
            ++out.checked;
            return;
        }
        for (Vertex v = 0; v < fx.g.n(); ++v) {
            env[names[i]] = v;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace fomax::testing
