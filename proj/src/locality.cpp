#include "fomax/locality.hpp"

#include <algorithm>
#include <functional>

#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/normal_form.hpp"
#include "fomax/orientation.hpp"
#include "fomax/parser.hpp"

namespace fomax {

std::size_t Shroud::max_size() const
{
    std::size_t m = 0;
    for (const auto& s : sets)
        m = std::max(m, s.size());
    return m;
}

Bitset Shroud::image(const Bitset& x) const
{
    Bitset out(n());
    x.for_each([&](Vertex v) {
        for (Vertex u : of(v))
            out.set(u);
    });
    return out;
}

Shroud compute_shroud(const Graph& g, const CounterSignature& sigma, const Interpretation& interp)
{
    Shroud h;
    h.levels = static_cast<int>(sigma.ell());
    h.sets.resize(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v)
        h.sets[static_cast<std::size_t>(v)] = {v};
    for (const auto& c : sigma.counters()) {
        const auto& f = interp.func(c.trigger.fn);
        for (auto& s : h.sets) {
            std::vector<Vertex> next = s;
            for (Vertex u : s)
                next.push_back(f[static_cast<std::size_t>(u)]);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            s = std::move(next);
        }
    }
    return h;
}

Shroud dependency_shroud(const Graph& g, const CounterSignature& sigma, const Interpretation& interp)
{
    Shroud h;
    h.levels = static_cast<int>(sigma.ell());
    h.sets.resize(static_cast<std::size_t>(g.n()));
    std::vector<std::vector<int>> deps;
    std::vector<const std::vector<Vertex>*> fns;
    for (const auto& c : sigma.counters()) {
        deps.push_back(sigma.dependencies(*c.trigger.theta));
        fns.push_back(&interp.func(c.trigger.fn));
    }
    std::vector<std::vector<Vertex>> reach(sigma.ell());
    for (Vertex v = 0; v < g.n(); ++v) {
        std::vector<Vertex> all{v};
        for (std::size_t i = 0; i < reach.size(); ++i) {
            std::vector<Vertex> from{v};
            for (int d : deps[i])
                from.insert(from.end(), reach[static_cast<std::size_t>(d)].begin(),
                            reach[static_cast<std::size_t>(d)].end());
            auto& out = reach[i];
            out.clear();
            for (Vertex u : from)
                out.push_back((*fns[i])[static_cast<std::size_t>(u)]);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            all.insert(all.end(), out.begin(), out.end());
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        h.sets[static_cast<std::size_t>(v)] = std::move(all);
    }
    return h;
}

Bitset h_center(const Shroud& h, const Bitset& y)
{
    Bitset out(y.size());
    y.for_each([&](Vertex v) {
        if (std::all_of(h.of(v).begin(), h.of(v).end(), [&](Vertex u) { return y.test(u); }))
            out.set(v);
    });
    return out;
}

std::map<std::string, FormulaPtr> card_bodies(const Formula& phi)
{
    std::map<std::string, FormulaPtr> out;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        if (f.op == Op::CardGe) {
            out.emplace(print(*f.kids[0]), f.kids[0]);
            return;
        }
        for (const auto& k : f.kids)
            walk(*k);
    };
    walk(phi);
    return out;
}

std::int64_t Census::theta_count(const std::string& key) const
{
    auto it = theta.find(key);
    return it == theta.end() ? 0 : it->second;
}

std::int64_t Census::counter(int gamma, Vertex v) const
{
    auto it = counters.find({gamma, v});
    return it == counters.end() ? 0 : it->second;
}

Census census_from(const CounterSignature& sigma, const Interpretation& interp,
                   const std::vector<Bitset>& fires, const std::map<std::string, Bitset>& body_truth,
                   const Bitset& region, std::int64_t M)
{
    Census n;
    n.M = M;
    n.region = region;
    for (const auto& [key, truth] : body_truth) {
        auto c = static_cast<std::int64_t>(truth.intersection_count(region));
        if (c > 0)
            n.theta.emplace(key, std::min(M, c));
    }
    for (std::size_t i = 0; i < sigma.counters().size(); ++i) {
        const auto& f = interp.func(sigma.counters()[i].trigger.fn);
        region.for_each([&](Vertex u) {
            Vertex v = f[static_cast<std::size_t>(u)];
            if (v == u || region.test(v) || !fires[i].test(u))
                return;
            auto& slot = n.counters[{static_cast<int>(i), v}];
            slot = std::min(M, slot + 1);
        });
    }
    return n;
}

Census census(const Graph& g, const CounterSignature& sigma, const Interpretation& interp, const ITuple& a,
              const Bitset& region, std::int64_t M, const Formula& phi)
{
    Evaluator ev(g, sigma, interp, a);
    std::map<std::string, Bitset> truth;
    for (const auto& [key, theta] : card_bodies(phi))
        truth.emplace(key, ev.local_truth(*theta));
    std::vector<Bitset> fires;
    for (const auto& c : sigma.counters())
        fires.push_back(ev.local_truth(*c.trigger.theta));
    return census_from(sigma, interp, fires, truth, region, M);
}

ITuple Restricted::localize_tuple(const ITuple& a) const
{
    ITuple out(a.indices(), to_global.size());
    for (std::size_t p = 0; p < a.indices().size(); ++p)
        a.by_position(p).for_each([&](Vertex v) {
            Vertex l = to_local[static_cast<std::size_t>(v)];
            if (l < 0)
                throw LogicError("tuple leaves the restricted vertex set");
            out.by_position(p).set(l);
        });
    return out;
}

ITuple Restricted::globalize_tuple(const ITuple& a, std::size_t n) const
{
    ITuple out(a.indices(), n);
    for (std::size_t p = 0; p < a.indices().size(); ++p)
        a.by_position(p).for_each([&](Vertex v) { out.by_position(p).set(to_global[static_cast<std::size_t>(v)]); });
    return out;
}

Bitset Restricted::localize_set(const Bitset& s) const
{
    Bitset out(to_global.size());
    for (std::size_t i = 0; i < to_global.size(); ++i)
        if (s.test(to_global[i]))
            out.set(static_cast<Vertex>(i));
    return out;
}

namespace {

std::string offset_pred(const std::string& counter, std::int64_t m)
{
    return "P_" + counter + "_" + std::to_string(m);
}

// γ(t) >= m  ->  OR_j (P_{γ,j}(t) and γ(t) >= m - j), j = 0..m.
FormulaPtr shift_counters(const FormulaPtr& f, std::int64_t M)
{
    switch (f->op) {
    case Op::CounterGe: {
        if (f->threshold > M)
            throw LogicError("counter threshold exceeds the census cap");
        std::vector<FormulaPtr> alts{f};
        for (std::int64_t j = 1; j <= f->threshold; ++j)
            alts.push_back(mk_and(mk_pred(offset_pred(f->name, j), f->t1),
                                  mk_counter_ge(f->name, f->t1, f->threshold - j)));
        return mk_or(std::move(alts));
    }
    case Op::Not:
        return mk_not(shift_counters(f->kids[0], M));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(shift_counters(k, M));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Op::Forall:
    case Op::Exists:
        return f->op == Op::Forall ? mk_forall(f->name, shift_counters(f->kids[0], M))
                                   : mk_exists(f->name, shift_counters(f->kids[0], M));
    default:
        return f;
    }
}

FormulaPtr shift_cards(const FormulaPtr& f, const Census& n)
{
    switch (f->op) {
    case Op::CardGe:
        return mk_card_ge(shift_counters(f->kids[0], n.M),
                          std::max<std::int64_t>(0, f->threshold - n.theta_count(print(*f->kids[0]))));
    case Op::Not:
        return mk_not(shift_cards(f->kids[0], n));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(shift_cards(k, n));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    default:
        return shift_counters(f, n.M);
    }
}

}  // namespace

Restricted restrict_to_subgraph(const Graph& g, const Interpretation& interp, const CounterSignature& sigma,
                                const FormulaPtr& phi, const Bitset& y, const Census& n)
{
    Restricted r;
    r.M = n.M;
    r.to_global = y.members();
    r.to_local.assign(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < r.to_global.size(); ++i)
        r.to_local[static_cast<std::size_t>(r.to_global[i])] = static_cast<Vertex>(i);
    r.graph = induced_subgraph(g, r.to_global);
    const std::size_t k = r.to_global.size();

    for (const auto& [name, set] : interp.preds)
        r.interp.preds.emplace(name, r.localize_set(set));
    for (const auto& [name, map] : interp.funcs) {
        std::vector<Vertex> local(k);
        for (std::size_t i = 0; i < k; ++i) {
            Vertex img = r.to_local[static_cast<std::size_t>(map[static_cast<std::size_t>(r.to_global[i])])];
            local[i] = img < 0 ? static_cast<Vertex>(i) : img;
        }
        r.interp.funcs.emplace(name, std::move(local));
    }
    for (const auto& p : sigma.predicates())
        r.sigma.add_predicate(p);
    for (const auto& f : sigma.functions())
        r.sigma.add_function(f);
    for (std::size_t gi = 0; gi < sigma.counters().size(); ++gi) {
        const auto& c = sigma.counters()[gi];
        for (std::int64_t m = 1; m <= n.M; ++m) {
            Bitset set(k);
            for (std::size_t i = 0; i < k; ++i)
                if (n.counter(static_cast<int>(gi), r.to_global[i]) >= m)
                    set.set(static_cast<Vertex>(i));
            std::string name = offset_pred(c.name, m);
            r.sigma.add_predicate(name);
            r.interp.preds.emplace(name, std::move(set));
        }
    }
    for (const auto& c : sigma.counters())
        r.sigma.add_counter(c.name, {c.trigger.fn, shift_counters(c.trigger.theta, n.M)});
    r.phi = shift_cards(phi, n);
    return r;
}

namespace {

struct Expander {
    const CounterSignature& sigma;
    int next = 0;

    std::string fresh() { return "w" + std::to_string(next++); }

    // m distinct u_i with body(u_i); extra(u_i) adds per-witness literals.
    FormulaPtr distinct_witnesses(std::int64_t m, const std::function<FormulaPtr(const Term&)>& body)
    {
        if (m <= 0)
            return mk_true();
        std::vector<std::string> names;
        std::vector<FormulaPtr> parts;
        for (std::int64_t i = 0; i < m; ++i) {
            names.push_back(fresh());
            Term u(names.back());
            for (std::size_t j = 0; j + 1 < names.size(); ++j)
                parts.push_back(mk_neq(Term(names[j]), u));
            parts.push_back(body(u));
        }
        FormulaPtr out = mk_and(std::move(parts));
        for (auto it = names.rbegin(); it != names.rend(); ++it)
            out = mk_exists(*it, out);
        return out;
    }

    FormulaPtr on(const FormulaPtr& theta, const Term& u)
    {
        std::string lv = local_var(*theta);
        return expand(lv.empty() ? theta : substitute(theta, lv, u));
    }

    FormulaPtr psi(int gamma, std::int64_t m, const Term& at)
    {
        const auto& c = sigma.counters()[static_cast<std::size_t>(gamma)];
        return distinct_witnesses(m, [&](const Term& u) {
            return mk_and({mk_neq(u, at), mk_eq(u.apply(c.trigger.fn), at), on(c.trigger.theta, u)});
        });
    }

    FormulaPtr expand(const FormulaPtr& f)
    {
        switch (f->op) {
        case Op::CounterGe: {
            int gamma = sigma.index_of(f->name);
            if (gamma < 0)
                throw LogicError("unknown counter " + f->name);
            return psi(gamma, f->threshold, f->t1);
        }
        case Op::CardGe:
            return distinct_witnesses(f->threshold, [&](const Term& u) { return on(f->kids[0], u); });
        case Op::Not:
            return mk_not(expand(f->kids[0]));
        case Op::And:
        case Op::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids)
                kids.push_back(expand(k));
            return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
        }
        case Op::Forall:
            return mk_forall(f->name, expand(f->kids[0]));
        case Op::Exists:
            return mk_exists(f->name, expand(f->kids[0]));
        default:
            return f;
        }
    }
};

}  // namespace

FormulaPtr counters_to_quantifiers(const CounterSignature& sigma, int gamma, std::int64_t m, const Term& at)
{
    Expander e{sigma};
    return e.psi(gamma, m, at);
}

FormulaPtr expand_counters(const CounterSignature& sigma, const FormulaPtr& phi)
{
    Expander e{sigma};
    return e.expand(phi);
}

Localized localize(const Graph& g, const FormulaPtr& phi, const Bitset& y, const ElimOptions& opts)
{
    Localized out;
    out.compiled = eliminate_all(phi, g, opts);
    const auto& c = out.compiled;
    out.shroud = compute_shroud(g, c.sigma, c.interp);
    out.center = h_center(out.shroud, y);
    ITuple empty(indices_used(*phi), static_cast<std::size_t>(g.n()));
    Census n = census(g, c.sigma, c.interp, empty, y.complement(), c.M, *c.phi);
    out.restricted = restrict_to_subgraph(g, c.interp, c.sigma, c.phi, y, n);
    out.phi_loc = expand_counters(out.restricted.sigma, out.restricted.phi);
    return out;
}

}  // namespace fomax
