#include "fomax/normal_form.hpp"

#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"

namespace fomax {

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negate)
{
    switch (f->op) {
    case Op::True:
    case Op::False:
        return mk_bool((f->op == Op::True) != negate);
    case Op::Not:
        return nnf(f->kids[0], !negate);
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(nnf(k, negate));
        bool conj = (f->op == Op::And) != negate;
        return conj ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    case Op::Forall:
    case Op::Exists: {
        auto body = nnf(f->kids[0], negate);
        bool universal = (f->op == Op::Forall) != negate;
        return universal ? mk_forall(f->name, body) : mk_exists(f->name, body);
    }
    default:
        return negate ? mk_not(f) : f;
    }
}

struct Renamer {
    std::set<std::string> used;
    int next = 0;

    std::string fresh(const std::string& base)
    {
        std::string name;
        do {
            name = base + "_" + std::to_string(next++);
        } while (used.count(name));
        used.insert(name);
        return name;
    }
};

void collect_names(const Formula& f, std::set<std::string>& out)
{
    if (f.op == Op::Forall || f.op == Op::Exists)
        out.insert(f.name);
    if (f.op == Op::CardGe)
        return;
    if (f.is_atom()) {
        out.insert(f.t1.var);
        if (f.op == Op::Eq || f.op == Op::Adj)
            out.insert(f.t2.var);
    }
    for (const auto& k : f.kids)
        collect_names(*k, out);
}

// Pull quantifiers of an NNF formula to the front, renaming apart.
FormulaPtr pull(const FormulaPtr& f, Renamer& r, std::set<std::string>& bound,
                std::vector<std::pair<Op, std::string>>& prefix)
{
    switch (f->op) {
    case Op::Forall:
    case Op::Exists: {
        std::string name = f->name;
        FormulaPtr body = f->kids[0];
        if (bound.count(name)) {
            std::string renamed = r.fresh(name);
            body = substitute(body, name, Term(renamed));
            name = renamed;
        }
        bound.insert(name);
        prefix.emplace_back(f->op, name);
        return pull(body, r, bound, prefix);
    }
    case Op::And:
    case Op::Or: {
        std::vector<FormulaPtr> kids;
        for (const auto& k : f->kids)
            kids.push_back(pull(k, r, bound, prefix));
        return f->op == Op::And ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    default:
        return f;
    }
}

std::string atom_key(const Formula& atom) { return print(atom); }

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) { return nnf(f, false); }

FormulaPtr Prenex::rebuild() const
{
    FormulaPtr out = matrix;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
        out = it->first == Op::Forall ? mk_forall(it->second, out) : mk_exists(it->second, out);
    return out;
}

Prenex to_prenex(const FormulaPtr& f)
{
    FormulaPtr g = to_nnf(f);
    Renamer r;
    collect_names(*g, r.used);
    // Free variables count as taken so no bound variable captures them.
    std::set<std::string> bound;
    for (const auto& v : free_vars(*g))
        bound.insert(v);
    Prenex out;
    out.matrix = pull(g, r, bound, out.prefix);
    return out;
}

bool is_literal(const Formula& f) { return f.is_atom() || (f.op == Op::Not && f.kids[0]->is_atom()); }

const Formula& literal_atom(const Formula& lit) { return lit.op == Op::Not ? *lit.kids[0] : lit; }

bool literal_positive(const Formula& lit) { return lit.op != Op::Not; }

namespace {

// Returns false when the conjunct is contradictory.
bool normalize_conjunct(Conjunct& c)
{
    std::map<std::string, std::pair<FormulaPtr, bool>> seen;
    Conjunct out;
    for (auto& lit : c) {
        const Formula& atom = literal_atom(*lit);
        bool pos = literal_positive(*lit);
        if (atom.op == Op::Eq && atom.t1 == atom.t2) {
            if (!pos)
                return false;
            continue;
        }
        if (atom.op == Op::Adj && atom.t1 == atom.t2) {
            if (pos)
                return false;
            continue;
        }
        std::string key = atom_key(atom);
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (it->second.second != pos)
                return false;
            continue;
        }
        seen.emplace(key, std::make_pair(lit, pos));
        out.push_back(lit);
    }
    c = std::move(out);
    return true;
}

void dnf_rec(const FormulaPtr& f, std::vector<Conjunct>& out, std::size_t cap)
{
    switch (f->op) {
    case Op::True:
        out.push_back({});
        return;
    case Op::False:
        return;
    case Op::Or:
        for (const auto& k : f->kids) {
            dnf_rec(k, out, cap);
            if (out.size() > cap)
                throw GuardError("DNF exceeds " + std::to_string(cap) + " conjuncts");
        }
        return;
    case Op::And: {
        std::vector<Conjunct> acc{{}};
        for (const auto& k : f->kids) {
            std::vector<Conjunct> part;
            dnf_rec(k, part, cap);
            std::vector<Conjunct> next;
            for (const auto& a : acc)
                for (const auto& b : part) {
                    Conjunct c = a;
                    c.insert(c.end(), b.begin(), b.end());
                    if (!normalize_conjunct(c))
                        continue;
                    next.push_back(std::move(c));
                    if (next.size() > cap)
                        throw GuardError("DNF exceeds " + std::to_string(cap) + " conjuncts");
                }
            acc = std::move(next);
            if (acc.empty())
                return;
        }
        out.insert(out.end(), acc.begin(), acc.end());
        return;
    }
    case Op::Forall:
    case Op::Exists:
        throw LogicError("to_dnf expects a quantifier-free formula");
    default:
        if (!is_literal(*f))
            throw LogicError("to_dnf expects NNF input");
        {
            Conjunct c{f};
            if (normalize_conjunct(c))
                out.push_back(std::move(c));
        }
        return;
    }
}

}  // namespace

std::vector<Conjunct> to_dnf(const FormulaPtr& qf, std::size_t cap)
{
    std::vector<Conjunct> raw;
    dnf_rec(to_nnf(qf), raw, cap);
    // Drop duplicate conjuncts (same literal set).
    std::vector<Conjunct> out;
    std::set<std::vector<std::string>> seen;
    for (auto& c : raw) {
        std::vector<std::string> key;
        for (const auto& lit : c)
            key.push_back(print(*lit));
        std::sort(key.begin(), key.end());
        if (seen.insert(std::move(key)).second)
            out.push_back(std::move(c));
    }
    return out;
}

FormulaPtr from_dnf(const std::vector<Conjunct>& dnf)
{
    std::vector<FormulaPtr> disj;
    for (const auto& c : dnf)
        disj.push_back(mk_and(c));
    return mk_or(std::move(disj));
}

FormulaPtr to_prenex_dnf(const FormulaPtr& f, bool dnf)
{
    Prenex p = to_prenex(f);
    if (dnf)
        p.matrix = from_dnf(to_dnf(p.matrix, 1u << 20));
    return p.rebuild();
}

MonotoneVerdict check_monotone_sampled(const Graph& g, const FormulaPtr& phi, const IndexSet& indices, int trials,
                                       std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    MonotoneVerdict verdict;
    const auto n = static_cast<std::size_t>(g.n());
    for (int t = 0; t < trials; ++t) {
        ITuple a(indices, n);
        // Vary the density so both sparse and dense tuples are sampled.
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double density = unit(rng);
        for (std::size_t p = 0; p < indices.size(); ++p)
            for (Vertex v = 0; v < g.n(); ++v)
                if (unit(rng) < density)
                    a.by_position(p).set(v);
        if (!evaluate_naive(g, a, phi))
            continue;
        ITuple b = a;
        std::vector<std::pair<std::size_t, Vertex>> members;
        for (std::size_t p = 0; p < indices.size(); ++p)
            a.by_position(p).for_each([&](Vertex v) { members.emplace_back(p, v); });
        if (members.empty())
            continue;
        std::shuffle(members.begin(), members.end(), rng);
        std::uniform_int_distribution<std::size_t> how_many(1, members.size());
        std::size_t k = how_many(rng);
        for (std::size_t i = 0; i < k; ++i)
            b.by_position(members[i].first).reset(members[i].second);
        if (!evaluate_naive(g, b, phi)) {
            verdict.counterexample_found = true;
            verdict.larger = std::move(a);
            verdict.smaller = std::move(b);
            return verdict;
        }
    }
    return verdict;
}

}  // namespace fomax
