#include "fomax/orientation.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace fomax {

Orientation degeneracy_orientation(const Graph& g)
{
    const auto n = static_cast<std::size_t>(g.n());
    Orientation o;
    o.rank.assign(n, -1);
    o.out.assign(n, {});
    std::vector<int> deg(n);
    // Ties on current degree go to the smaller original degree, then the
    // smaller id.
    std::set<std::tuple<int, int, Vertex>> queue;
    for (Vertex v = 0; v < g.n(); ++v) {
        deg[static_cast<std::size_t>(v)] = g.degree(v);
        queue.emplace(g.degree(v), g.degree(v), v);
    }
    int next = 0;
    while (!queue.empty()) {
        auto [dv, d0, v] = *queue.begin();
        queue.erase(queue.begin());
        o.rank[static_cast<std::size_t>(v)] = next++;
        for (Vertex w : g.neighbors(v)) {
            auto& dw = deg[static_cast<std::size_t>(w)];
            if (o.rank[static_cast<std::size_t>(w)] >= 0)
                continue;
            o.out[static_cast<std::size_t>(v)].push_back(w);
            queue.erase({dw, g.degree(w), w});
            --dw;
            queue.emplace(dw, g.degree(w), w);
        }
    }
    for (auto& heads : o.out) {
        std::sort(heads.begin(), heads.end(),
                  [&](Vertex a, Vertex b) { return o.rank[static_cast<std::size_t>(a)] < o.rank[static_cast<std::size_t>(b)]; });
        o.d = std::max(o.d, static_cast<int>(heads.size()));
    }
    return o;
}

namespace {

FormulaPtr rewrite(const FormulaPtr& f, const std::vector<std::string>& fns)
{
    switch (f->op) {
    case Op::Adj: {
        if (f->t1 == f->t2)
            return mk_false();
        std::vector<FormulaPtr> alts;
        for (const auto& fn : fns) {
            alts.push_back(mk_eq(f->t1.apply(fn), f->t2));
            alts.push_back(mk_eq(f->t2.apply(fn), f->t1));
        }
        return mk_and(mk_neq(f->t1, f->t2), mk_or(std::move(alts)));
    }
    case Op::Not:
        return mk_not(rewrite(f->kids[0], fns));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(rewrite(k, fns));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Op::Forall:
        return mk_forall(f->name, rewrite(f->kids[0], fns));
    case Op::Exists:
        return mk_exists(f->name, rewrite(f->kids[0], fns));
    case Op::CardGe:
        return mk_card_ge(rewrite(f->kids[0], fns), f->threshold);
    default:
        return f;
    }
}

}  // namespace

AdjacencyElimination eliminate_adjacency(const Graph& g, const FormulaPtr& phi)
{
    AdjacencyElimination out;
    if (!contains_op(*phi, Op::Adj)) {
        out.phi = phi;
        return out;
    }
    Orientation o = degeneracy_orientation(g);
    for (int i = 0; i < o.d; ++i) {
        std::string name = "f" + std::to_string(i + 1);
        std::vector<Vertex> map(static_cast<std::size_t>(g.n()));
        for (Vertex v = 0; v < g.n(); ++v) {
            const auto& heads = o.out[static_cast<std::size_t>(v)];
            map[static_cast<std::size_t>(v)] = static_cast<std::size_t>(i) < heads.size() ? heads[static_cast<std::size_t>(i)] : v;
        }
        out.interp.funcs.emplace(name, std::move(map));
        out.functions.push_back(std::move(name));
    }
    out.phi = rewrite(phi, out.functions);
    return out;
}

}  // namespace fomax
