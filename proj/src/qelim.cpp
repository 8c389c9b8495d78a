#include "fomax/qelim.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/orientation.hpp"
#include "fomax/parser.hpp"

namespace fomax {

namespace {

const std::string kLocal = "x";

bool literal_mentions(const Formula& lit, const std::string& z)
{
    const Formula& a = literal_atom(lit);
    switch (a.op) {
    case Op::Eq:
    case Op::Adj:
        return a.t1.var == z || a.t2.var == z;
    case Op::Set:
    case Op::Pred:
    case Op::CounterGe:
        return a.t1.var == z;
    default:
        return false;
    }
}

FormulaPtr with_term(const Formula& atom, const Term& t)
{
    switch (atom.op) {
    case Op::Set:
        return mk_set(atom.index, t);
    case Op::Pred:
        return mk_pred(atom.name, t);
    case Op::CounterGe:
        return mk_counter_ge(atom.name, t, atom.threshold);
    default:
        throw LogicError("expected a unary literal, got " + print(atom));
    }
}

FormulaPtr relit(const Formula& lit, const Term& t)
{
    FormulaPtr a = with_term(literal_atom(lit), t);
    return literal_positive(lit) ? a : mk_not(a);
}

// Ancestor of node y at `up` steps.
int climb(const Template& q, int y, int up)
{
    for (int i = 0; i < up; ++i)
        y = q.parent[static_cast<std::size_t>(y)];
    return y;
}

Vertex climb_f(const Scaffolding& f, Vertex v, int up)
{
    for (int i = 0; i < up; ++i)
        v = f.parent[static_cast<std::size_t>(v)];
    return v;
}

int fdepth(const Scaffolding& f, Vertex v) { return f.depth[static_cast<std::size_t>(v)] - 1; }

// Subtemplate induced by `keep` (closed under ancestors), restricted to terms.
Template sub_template(const Template& q, const std::vector<bool>& keep, const std::map<Term, int, TermLess>& mu)
{
    std::vector<int> id(static_cast<std::size_t>(q.size()), -1);
    Template out;
    for (int v = 0; v < q.size(); ++v)
        if (keep[static_cast<std::size_t>(v)])
            id[static_cast<std::size_t>(v)] = static_cast<int>(out.parent.size()), out.parent.push_back(-2);
    for (int v = 0; v < q.size(); ++v)
        if (keep[static_cast<std::size_t>(v)]) {
            int p = q.parent[static_cast<std::size_t>(v)];
            out.parent[static_cast<std::size_t>(id[static_cast<std::size_t>(v)])] = p < 0 ? -1 : id[static_cast<std::size_t>(p)];
        }
    for (const auto& [t, n] : mu) {
        if (id[static_cast<std::size_t>(n)] < 0)
            throw LogicError("term " + to_string(t) + " falls outside the subtemplate");
        out.placement.emplace_back(t, id[static_cast<std::size_t>(n)]);
    }
    return out;
}

}  // namespace

bool is_static_literal(const Formula& lit)
{
    Op op = literal_atom(lit).op;
    return op == Op::Eq || op == Op::Pred || op == Op::Adj;
}

Compiler::Compiler(const Graph& g, CounterSignature sigma, Interpretation interp, ElimOptions opts)
    : g_(g), sigma_(std::move(sigma)), interp_(std::move(interp)), opts_(opts)
{
    for (const auto& [name, map] : interp_.funcs)
        fn_by_map_.emplace(map, name);
    for (const auto& [name, set] : interp_.preds)
        pred_by_set_.emplace(set, name);
}

std::string Compiler::fresh(const std::string& prefix)
{
    while (true) {
        std::string name = prefix + std::to_string(++next_id_[prefix]);
        if (!sigma_.has_counter(name) && !sigma_.predicates().count(name) && !sigma_.functions().count(name))
            return name;
    }
}

std::string Compiler::intern_predicate(const Bitset& set, const char* prefix)
{
    auto it = pred_by_set_.find(set);
    if (it != pred_by_set_.end())
        return it->second;
    std::string name = fresh(prefix);
    sigma_.add_predicate(name);
    interp_.preds.emplace(name, set);
    pred_by_set_.emplace(set, name);
    return name;
}

std::string Compiler::intern_function(const std::vector<Vertex>& map, const char* prefix)
{
    auto it = fn_by_map_.find(map);
    if (it != fn_by_map_.end())
        return it->second;
    std::string name = fresh(prefix);
    sigma_.add_function(name);
    interp_.funcs.emplace(name, map);
    fn_by_map_.emplace(map, name);
    return name;
}

FormulaPtr Compiler::pred_literal(const Bitset& set, const char* prefix, const Term& t)
{
    if (set.none())
        return mk_false();
    if (set.count() == set.size())
        return mk_true();
    return mk_pred(intern_predicate(set, prefix), t);
}

std::string Compiler::intern_counter(const std::string& fn, const FormulaPtr& theta)
{
    if (theta->op == Op::False)
        return {};
    std::string key = fn + "|" + print(*theta);
    auto it = counter_by_trigger_.find(key);
    if (it != counter_by_trigger_.end())
        return it->second;
    std::string name = fresh("c");
    sigma_.add_counter(name, Trigger{fn, theta});
    counter_by_trigger_.emplace(key, name);
    return name;
}

std::pair<std::string, std::string> Compiler::represent(const Scaffolding& f)
{
    std::string in_f = intern_predicate(f.members, "in");
    std::string prt_f = intern_function(f.parent, "prt");
    return {in_f, prt_f};
}

Vertex Compiler::eval(const Term& t, const std::map<std::string, Vertex>& env) const
{
    return term_value(interp_, t, env);
}

FormulaPtr Compiler::fold(const FormulaPtr& f) const
{
    switch (f->op) {
    case Op::Pred: {
        auto it = interp_.preds.find(f->name);
        if (it == interp_.preds.end())
            return f;
        if (it->second.none())
            return mk_false();
        if (it->second.count() == it->second.size())
            return mk_true();
        return f;
    }
    case Op::Not:
        return mk_not(fold(f->kids[0]));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(fold(k));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    default:
        return f;
    }
}

const std::vector<Scaffolding>& Compiler::scaffoldings(int s)
{
    auto it = systems_.find(s);
    if (it == systems_.end())
        it = systems_.emplace(s, scaffolding_system(g_, s, opts_.depth_cap)).first;
    return it->second;
}

FormulaPtr Compiler::eliminate_template(const Conjunct& psi, const std::string& z, const Template& t,
                                        const Scaffolding& f)
{
    auto [in_f, prt_f] = represent(f);
    std::map<Term, int, TermLess> mu(t.placement.begin(), t.placement.end());
    auto node = [&](const Term& term) {
        auto it = mu.find(term);
        if (it == mu.end())
            throw LogicError("template does not place term " + to_string(term));
        return it->second;
    };
    if (!mu.count(Term(z)))
        throw LogicError("template does not place the eliminated variable");

    // Equalities are decided by the template.
    Conjunct lits;
    for (const auto& lit : psi) {
        const Formula& a = literal_atom(*lit);
        if (a.op == Op::Adj || a.op == Op::CardGe)
            throw LogicError("eliminate_template: unexpected literal " + print(*lit));
        if (a.op == Op::Eq) {
            bool same = node(a.t1) == node(a.t2);
            if (same != literal_positive(*lit))
                return mk_false();
            continue;
        }
        node(a.t1);
        lits.push_back(lit);
    }

    const int zr = node(Term(z));
    // Rewrite z-terms that sit above z-free terms. A rewrite can leave a
    // z-free term at or below mu(z), so the substitution case is rechecked.
    while (true) {
        // z sits above a z-free term: its value is an ancestor of that term.
        for (const auto& [term, n] : mu) {
            if (term.var == z || !t.is_ancestor_or_self(zr, n))
                continue;
            Template cur{t.parent, {mu.begin(), mu.end()}};
            Term value = term.apply_n(prt_f, t.depth(n) - t.depth(zr));
            FormulaPtr body = mk_and(template_match_formula(cur, in_f, prt_f), mk_and(lits));
            return fold(substitute(body, z, value));
        }
        const Term* tp = nullptr;
        const Term* tf = nullptr;
        int best = -1;
        for (const auto& [a, na] : mu) {
            if (a.var != z)
                continue;
            for (const auto& [b, nb] : mu) {
                if (b.var == z || !t.is_ancestor_or_self(na, nb))
                    continue;
                int k = t.depth(nb) - t.depth(na);
                if (k > best) {
                    best = k;
                    tp = &a;
                    tf = &b;
                }
            }
        }
        if (!tp)
            break;
        const Term t_old = *tp;
        const Term t_free = *tf;
        const int k = best;
        const int na = mu.at(t_old);
        if (na == zr || !t.is_ancestor_or_self(na, zr))
            throw LogicError("eliminate_template: guard-consistency violated");
        const int kp = t.depth(zr) - t.depth(na);
        Bitset qset(static_cast<std::size_t>(g_.n()));
        f.members.for_each([&](Vertex v) {
            if (fdepth(f, v) >= kp && eval(t_old, {{z, v}}) == climb_f(f, v, kp))
                qset.set(v);
        });
        FormulaPtr qlit = pred_literal(qset, "q", Term(z));
        if (qlit->op == Op::False)
            return mk_false();
        const Term repl = t_free.apply_n(prt_f, k);
        Conjunct next;
        for (const auto& lit : lits)
            next.push_back(replace_subterm(lit, t_old, repl));
        if (qlit->op != Op::True)
            next.push_back(qlit);
        lits = std::move(next);
        std::map<Term, int, TermLess> mu_next;
        bool clash = false;
        auto put = [&](const Term& term, int n) {
            auto [it, fresh_entry] = mu_next.emplace(term, n);
            if (!fresh_entry && it->second != n)
                clash = true;
        };
        for (const auto& [a, n] : mu)
            if (!a.has_prefix(t_old))
                put(a, n);
        for (const auto& [a, n] : mu)
            if (a.has_prefix(t_old))
                put(a.replace_prefix(t_old, repl), n);
        const int nf = mu.at(t_free);
        for (int i = 0; i <= k; ++i)
            put(t_free.apply_n(prt_f, i), climb(t, nf, i));
        // Parent values are forced by any matching embedding.
        if (clash)
            return mk_false();
        mu = std::move(mu_next);
    }

    // r: the highest ancestor of mu(z) whose subtree holds only z-terms.
    auto subtree_has_free = [&](int y) {
        for (const auto& [a, n] : mu)
            if (a.var != z && t.is_ancestor_or_self(y, n))
                return true;
        return false;
    };
    int r = zr;
    while (t.parent[static_cast<std::size_t>(r)] >= 0 && !subtree_has_free(t.parent[static_cast<std::size_t>(r)]))
        r = t.parent[static_cast<std::size_t>(r)];

    std::map<Term, int, TermLess> mu2;
    std::map<Term, int, TermLess> mu3;
    for (const auto& [a, n] : mu) {
        if (a.var == z) {
            if (!t.is_ancestor_or_self(r, n))
                throw LogicError("eliminate_template: z-term outside the subtree of r");
            mu2.emplace(a, n);
        } else {
            mu3.emplace(a, n);
        }
    }
    std::vector<bool> in_b(static_cast<std::size_t>(t.size()));
    std::vector<bool> keep2(static_cast<std::size_t>(t.size()));
    std::vector<bool> keep3(static_cast<std::size_t>(t.size()));
    for (int y = 0; y < t.size(); ++y) {
        in_b[static_cast<std::size_t>(y)] = t.is_ancestor_or_self(r, y);
        keep2[static_cast<std::size_t>(y)] = in_b[static_cast<std::size_t>(y)] || t.is_ancestor_or_self(y, r);
        keep3[static_cast<std::size_t>(y)] = !in_b[static_cast<std::size_t>(y)];
    }
    Template t2 = sub_template(t, keep2, mu2);
    Template t3 = sub_template(t, keep3, mu3);

    // Siblings of r and the terms pinning them.
    const int pr = t.parent[static_cast<std::size_t>(r)];
    std::vector<Term> s_terms;
    for (int y = 0; y < t.size(); ++y) {
        if (y == r || t.parent[static_cast<std::size_t>(y)] != pr)
            continue;
        const Term* pick = nullptr;
        for (const auto& [a, n] : mu3)
            if (t.is_ancestor_or_self(y, n)) {
                pick = &a;
                break;
            }
        if (!pick)
            throw LogicError("eliminate_template: sibling subtree without terms");
        s_terms.push_back(pick->apply_n(prt_f, t.depth(mu3.at(*pick)) - t.depth(y)));
    }
    Term s_parent;
    if (pr >= 0) {
        bool found = false;
        for (const auto& [a, n] : mu3)
            if (n == pr) {
                s_parent = a;
                found = true;
                break;
            }
        if (!found) {
            if (s_terms.empty())
                throw LogicError("eliminate_template: parent of r is unpinned");
            s_parent = s_terms.front().apply(prt_f);
        }
    }

    Conjunct psi2;
    std::vector<FormulaPtr> psi3;
    for (const auto& lit : lits)
        (literal_mentions(*lit, z) ? psi2.push_back(lit) : psi3.push_back(lit));

    FormulaPtr lambda = elimone(psi2, t, mu2, r, zr, f, t2, prt_f);
    if (lambda->op == Op::False)
        return mk_false();

    const std::size_t m = s_terms.size();
    std::string a_counter;
    if (pr >= 0) {
        a_counter = intern_counter(prt_f, lambda);
        if (a_counter.empty())
            return mk_false();
    }
    std::vector<FormulaPtr> choices;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<FormulaPtr> part;
        std::int64_t need = static_cast<std::int64_t>(m) + 1;
        for (std::size_t j = 0; j < m; ++j)
            if ((mask >> j) & 1u) {
                part.push_back(mk_not(substitute(lambda, kLocal, s_terms[j])));
                --need;
            }
        part.push_back(pr < 0 ? mk_card_ge(lambda, need) : mk_counter_ge(a_counter, s_parent, need));
        choices.push_back(mk_and(std::move(part)));
    }
    std::vector<FormulaPtr> out;
    out.push_back(template_match_formula(t3, in_f, prt_f));
    out.insert(out.end(), psi3.begin(), psi3.end());
    out.push_back(mk_or(std::move(choices)));
    return fold(mk_and(std::move(out)));
}

FormulaPtr Compiler::elimone(const Conjunct& psi2, const Template& q, const std::map<Term, int, TermLess>& mu2, int r,
                             int zr, const Scaffolding& f, const Template& t2, const std::string& prt_f)
{
    const Term x(kLocal);
    std::vector<int> nodes;
    for (int y = 0; y < q.size(); ++y)
        if (q.is_ancestor_or_self(r, y))
            nodes.push_back(y);
    std::stable_sort(nodes.begin(), nodes.end(), [&](int a, int b) { return q.depth(a) > q.depth(b); });
    const std::string z = mu2.begin()->first.var;

    std::map<int, std::string> counter_into;  // child y -> A_{parent(y), y}
    FormulaPtr lambda_r;
    for (int y : nodes) {
        std::vector<FormulaPtr> parts;
        if (y != r && !q.is_ancestor_or_self(y, zr)) {
            // (i) pin the unique child on the way to a z-term below y.
            const Term* ty = nullptr;
            for (const auto& [a, n] : mu2)
                if (q.is_ancestor_or_self(y, n)) {
                    ty = &a;
                    break;
                }
            if (!ty)
                throw LogicError("elimone: node without terms below it");
            const int nt = mu2.at(*ty);
            int anchor_len = -1;
            for (int len = static_cast<int>(ty->fns.size()); len >= 0; --len) {
                auto it = mu2.find(ty->prefix(static_cast<std::size_t>(len)));
                if (it == mu2.end())
                    continue;
                if (q.is_ancestor_or_self(it->second, nt) && q.is_ancestor_or_self(it->second, zr)) {
                    anchor_len = len;
                    break;
                }
            }
            if (anchor_len < 0)
                throw LogicError("elimone: no common-ancestor subterm");
            const Term anchor = ty->prefix(static_cast<std::size_t>(anchor_len));
            const int anchor_depth = q.depth(mu2.at(anchor));
            const std::vector<std::string> chain(ty->fns.begin() + anchor_len, ty->fns.end());
            const int dy = q.depth(y);
            Bitset pset(static_cast<std::size_t>(g_.n()));
            f.members.for_each([&](Vertex w) {
                if (fdepth(f, w) != dy)
                    return;
                Vertex v = climb_f(f, w, dy - anchor_depth);
                for (const auto& fn : chain)
                    v = interp_.func(fn)[static_cast<std::size_t>(v)];
                if (f.is_ancestor_or_self(w, v))
                    pset.set(w);
            });
            parts.push_back(pred_literal(pset, "p", x));
        }
        if (y == zr) {
            // (ii) z placed here matches T2.
            Bitset tau(static_cast<std::size_t>(g_.n()));
            f.members.for_each([&](Vertex w) {
                if (matches_template(f, t2, interp_, {{z, w}}))
                    tau.set(w);
            });
            parts.push_back(pred_literal(tau, "tau", x));
        }
        for (int c : q.children(y)) {
            // (iii)
            const std::string& name = counter_into.at(c);
            parts.push_back(name.empty() ? mk_false() : mk_counter_ge(name, x, 1));
        }
        for (const auto& lit : psi2) {
            // (iv)
            const Formula& a = literal_atom(*lit);
            auto it = mu2.find(a.t1);
            if (it == mu2.end())
                throw LogicError("elimone: literal term not placed");
            if (it->second == y)
                parts.push_back(relit(*lit, x));
        }
        FormulaPtr lambda_y = mk_and(std::move(parts));
        if (y == r)
            lambda_r = lambda_y;
        else
            counter_into[y] = intern_counter(prt_f, lambda_y);
    }
    return lambda_r;
}

std::vector<Template> Compiler::templates_for(const Conjunct& lits, const TermSet& x, const Scaffolding& f)
{
    if (!opts_.harvest)
        return enumerate_templates(x, f.max_depth, opts_.template_cap);
    std::vector<Term> terms(x.begin(), x.end());
    std::vector<std::string> vars;
    for (const auto& t : terms)
        if (std::find(vars.begin(), vars.end(), t.var) == vars.end())
            vars.push_back(t.var);
    // Resolve each term to a variable slot and a chain of maps.
    std::vector<std::size_t> slot(terms.size());
    std::vector<std::vector<const std::vector<Vertex>*>> chain(terms.size());
    std::map<Term, std::size_t, TermLess> index;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        slot[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), terms[i].var) - vars.begin());
        for (const auto& fn : terms[i].fns)
            chain[i].push_back(&interp_.func(fn));
        index.emplace(terms[i], i);
    }
    struct Check {
        bool eq;
        bool positive;
        std::size_t a;
        std::size_t b;
        const Bitset* set;
    };
    std::vector<Check> checks;
    for (const auto& lit : lits) {
        const Formula& a = literal_atom(*lit);
        if (a.op == Op::Eq)
            checks.push_back({true, literal_positive(*lit), index.at(a.t1), index.at(a.t2), nullptr});
        else if (a.op == Op::Pred)
            checks.push_back({false, literal_positive(*lit), index.at(a.t1), 0, &interp_.pred(a.name)});
    }

    std::map<std::string, Template> found;
    const auto n = static_cast<std::size_t>(g_.n());
    std::vector<Vertex> assign(vars.size(), 0);
    std::vector<Vertex> values(terms.size());
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < terms.size() && ok; ++i) {
            Vertex v = assign[slot[i]];
            for (const auto* fn : chain[i])
                v = (*fn)[static_cast<std::size_t>(v)];
            values[i] = v;
            ok = f.contains(v);
        }
        for (std::size_t c = 0; c < checks.size() && ok; ++c) {
            const auto& ch = checks[c];
            bool holds = ch.eq ? values[ch.a] == values[ch.b] : ch.set->test(values[ch.a]);
            ok = holds == ch.positive;
        }
        if (ok) {
            auto tmpl = induced_template(f, terms, values);
            std::string key = tmpl->canonical();
            if (found.emplace(std::move(key), std::move(*tmpl)).second && found.size() > opts_.template_cap)
                throw GuardError("template harvest exceeds " + std::to_string(opts_.template_cap));
        }
        std::size_t k = 0;
        while (k < assign.size() && static_cast<std::size_t>(++assign[k]) == n)
            assign[k++] = 0;
        if (k == assign.size())
            break;
    }
    std::vector<Template> out;
    for (auto& [key, tmpl] : found)
        out.push_back(std::move(tmpl));
    return out;
}

FormulaPtr Compiler::eliminate_conjunct(const std::string& z, Conjunct c)
{
    ++stats_.conjuncts;
    std::vector<FormulaPtr> hoisted;
    Conjunct rest;
    for (auto& lit : c)
        (literal_mentions(*lit, z) ? rest.push_back(lit) : hoisted.push_back(lit));
    // z = t with t free of z: substitute.
    for (const auto& lit : rest) {
        const Formula& a = literal_atom(*lit);
        if (a.op != Op::Eq || !literal_positive(*lit))
            continue;
        const Term* other = nullptr;
        if (a.t1 == Term(z) && a.t2.var != z)
            other = &a.t2;
        else if (a.t2 == Term(z) && a.t1.var != z)
            other = &a.t1;
        if (!other)
            continue;
        std::vector<FormulaPtr> parts = hoisted;
        for (const auto& l : rest)
            parts.push_back(substitute(l, z, *other));
        return mk_and(std::move(parts));
    }
    if (rest.empty()) {
        hoisted.push_back(mk_bool(g_.n() > 0));
        return mk_and(std::move(hoisted));
    }
    TermSet x = term_set(*mk_and(rest));
    const auto& system = scaffoldings(static_cast<int>(x.size()));
    std::vector<FormulaPtr> alts;
    for (const auto& f : system)
        for (const auto& tmpl : templates_for(rest, x, f)) {
            ++stats_.templates;
            alts.push_back(eliminate_template(rest, z, tmpl, f));
        }
    hoisted.push_back(mk_or(std::move(alts)));
    return mk_and(std::move(hoisted));
}

std::vector<std::pair<Bitset, FormulaPtr>> Compiler::type_split(const std::string& z, const FormulaPtr& body)
{
    TermSet x = term_set(*body);
    std::vector<Term> terms(x.begin(), x.end());
    std::vector<std::pair<Bitset, FormulaPtr>> out;
    std::map<std::string, std::size_t> by_key;
    const auto n = static_cast<std::size_t>(g_.n());
    for (Vertex v = 0; v < g_.n(); ++v) {
        std::map<Term, Vertex, TermLess> value;
        std::map<Vertex, Term> canon;
        for (const auto& t : terms) {
            Vertex w = eval(t, {{z, v}});
            value.emplace(t, w);
            canon.emplace(w, t);  // terms visited shortest first, so the first wins
        }
        std::function<FormulaPtr(const FormulaPtr&)> spec = [&](const FormulaPtr& f) -> FormulaPtr {
            switch (f->op) {
            case Op::Eq:
                return mk_bool(value.at(f->t1) == value.at(f->t2));
            case Op::Adj:
                return mk_bool(g_.adjacent(value.at(f->t1), value.at(f->t2)));
            case Op::Pred:
                return mk_bool(interp_.pred(f->name).test(value.at(f->t1)));
            case Op::Set:
            case Op::CounterGe:
                return with_term(*f, canon.at(value.at(f->t1)));
            case Op::Not:
                return mk_not(spec(f->kids[0]));
            case Op::And:
            case Op::Or: {
                std::vector<FormulaPtr> kids;
                for (const auto& k : f->kids)
                    kids.push_back(spec(k));
                return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
            }
            default:
                return f;
            }
        };
        FormulaPtr g = spec(body);
        std::string key = print(*g);
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            by_key.emplace(key, out.size());
            out.emplace_back(Bitset(n), g);
            out.back().first.set(v);
        } else {
            out[it->second].first.set(v);
        }
    }
    return out;
}

FormulaPtr Compiler::eliminate_exists(const std::string& z, const FormulaPtr& body)
{
    if (!free_vars(*body).count(z))
        return g_.n() > 0 ? body : mk_false();
    if (body->op == Op::Or) {
        std::vector<FormulaPtr> alts;
        for (const auto& k : body->kids)
            alts.push_back(eliminate_exists(z, k));
        return mk_or(std::move(alts));
    }
    if (body->op == Op::And) {
        std::vector<FormulaPtr> outside, inside;
        for (const auto& k : body->kids)
            (free_vars(*k).count(z) ? inside : outside).push_back(k);
        if (!outside.empty()) {
            outside.push_back(eliminate_exists(z, mk_and(std::move(inside))));
            return mk_and(std::move(outside));
        }
    }
    std::vector<Conjunct> dnf;
    try {
        dnf = to_dnf(body, opts_.dnf_cap);
    } catch (const GuardError&) {
        if (free_vars(*body) != std::set<std::string>{z})
            throw;
        ++stats_.typed_splits;
        for (const auto& [set, spec] : type_split(z, body)) {
            FormulaPtr type_lit = pred_literal(set, "T", Term(z));
            for (auto& c : to_dnf(mk_and(type_lit, spec), opts_.dnf_cap))
                dnf.push_back(std::move(c));
        }
    }
    std::vector<FormulaPtr> alts;
    for (auto& c : dnf)
        alts.push_back(eliminate_conjunct(z, std::move(c)));
    return mk_or(std::move(alts));
}

FormulaPtr Compiler::eliminate_quantifier(Op quantifier, const std::string& z, const FormulaPtr& body)
{
    ++stats_.quantifiers;
    if (quantifier == Op::Forall)
        return to_nnf(mk_not(eliminate_exists(z, to_nnf(mk_not(body)))));
    if (quantifier != Op::Exists)
        throw LogicError("eliminate_quantifier: not a quantifier");
    return eliminate_exists(z, to_nnf(body));
}

namespace {

// Innermost quantifiers first, each at its own position in the tree.
FormulaPtr eliminate_rec(Compiler& c, const FormulaPtr& f)
{
    switch (f->op) {
    case Op::Forall:
    case Op::Exists:
        return c.eliminate_quantifier(f->op, f->name, eliminate_rec(c, f->kids[0]));
    case Op::Not:
        return mk_not(eliminate_rec(c, f->kids[0]));
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(eliminate_rec(c, k));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    default:
        return f;
    }
}

}  // namespace

Compiled eliminate_all(const FormulaPtr& phi, const Graph& g, const ElimOptions& opts)
{
    if (!free_vars(*phi).empty())
        throw LogicError("eliminate_all expects a sentence");
    Compiled out;
    if (g.n() == 0) {
        ITuple empty(indices_used(*phi), 0);
        out.phi = mk_bool(evaluate_naive(g, empty, phi));
        return out;
    }
    AdjacencyElimination adj = eliminate_adjacency(g, phi);
    CounterSignature sigma;
    for (const auto& fn : adj.functions)
        sigma.add_function(fn);
    Compiler compiler(g, std::move(sigma), std::move(adj.interp), opts);
    FormulaPtr cur = eliminate_rec(compiler, to_nnf(adj.phi));
    out.sigma = compiler.signature();
    out.interp = compiler.interpretation();
    out.phi = cur;
    out.M = std::max<std::int64_t>({1, max_constant(*cur), out.sigma.max_trigger_constant()});
    out.stats = compiler.stats();
    return out;
}

}  // namespace fomax
