#include "fomax/evaluator.hpp"

#include "fomax/errors.hpp"

namespace fomax {

namespace {

// Truth of an x-local formula at v given a (possibly partial) counter table.
bool local_eval(const Formula& f, Vertex v, const Interpretation& interp, const ITuple& a,
                const CounterSignature& sigma, const CounterTable& table, const Graph& g)
{
    switch (f.op) {
    case Op::True:
        return true;
    case Op::False:
        return false;
    case Op::Not:
        return !local_eval(*f.kids[0], v, interp, a, sigma, table, g);
    case Op::And:
        for (const auto& k : f.kids)
            if (!local_eval(*k, v, interp, a, sigma, table, g))
                return false;
        return true;
    case Op::Or:
        for (const auto& k : f.kids)
            if (local_eval(*k, v, interp, a, sigma, table, g))
                return true;
        return false;
    case Op::Eq:
        return true;
    case Op::Adj:
        return false;
    case Op::Set:
        return a.set_at(f.index).test(v);
    case Op::Pred:
        return interp.pred(f.name).test(v);
    case Op::CounterGe: {
        int c = sigma.index_of(f.name);
        if (c < 0)
            throw LogicError("unknown counter '" + f.name + "'");
        if (static_cast<std::size_t>(c) >= table.values.size())
            throw LogicError("counter '" + f.name + "' used before it is computed");
        return table.at(c, v) >= f.threshold;
    }
    default:
        throw LogicError("formula is not x-local: " + print(f));
    }
}

}  // namespace

CounterTable evaluate_counters(const Graph& g, const Interpretation& interp, const ITuple& a,
                               const CounterSignature& sigma)
{
    CounterTable table;
    const std::size_t n = static_cast<std::size_t>(g.n());
    table.values.reserve(sigma.ell());
    for (const auto& c : sigma.counters()) {
        const auto& fn = interp.func(c.trigger.fn);
        std::vector<std::int64_t> col(n, 0);
        for (Vertex u = 0; u < g.n(); ++u) {
            Vertex target = fn[static_cast<std::size_t>(u)];
            if (target == u)
                continue;
            if (local_eval(*c.trigger.theta, u, interp, a, sigma, table, g))
                ++col[static_cast<std::size_t>(target)];
        }
        table.values.push_back(std::move(col));
    }
    return table;
}

Evaluator::Evaluator(const Graph& g, const CounterSignature& sigma, const Interpretation& interp, const ITuple& a)
    : g_(g), sigma_(sigma), interp_(interp), a_(a)
{
}

const CounterTable& Evaluator::counters()
{
    if (!table_)
        table_ = evaluate_counters(g_, interp_, a_, sigma_);
    return *table_;
}

Vertex Evaluator::lookup(const std::string& var) const
{
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
        if (it->var == var)
            return it->v;
    throw LogicError("unbound variable '" + var + "'");
}

Vertex Evaluator::value_rec(const Term& t) const
{
    Vertex v = lookup(t.var);
    for (const auto& fn : t.fns)
        v = interp_.func(fn)[static_cast<std::size_t>(v)];
    return v;
}

Vertex Evaluator::value(const Term& t, const Env& env) const
{
    auto it = env.find(t.var);
    if (it == env.end())
        throw LogicError("unbound variable '" + t.var + "'");
    Vertex v = it->second;
    for (const auto& fn : t.fns)
        v = interp_.func(fn)[static_cast<std::size_t>(v)];
    return v;
}

bool Evaluator::local_at(const Formula& theta, Vertex v)
{
    return local_eval(theta, v, interp_, a_, sigma_, counters(), g_);
}

Bitset Evaluator::local_truth(const Formula& f)
{
    const auto n = static_cast<std::size_t>(g_.n());
    switch (f.op) {
    case Op::True:
    case Op::Eq:
        return Bitset::full(n);
    case Op::False:
    case Op::Adj:
        return Bitset(n);
    case Op::Not:
        return local_truth(*f.kids[0]).complement();
    case Op::And: {
        Bitset acc = local_truth(*f.kids[0]);
        for (std::size_t i = 1; i < f.kids.size(); ++i)
            acc &= local_truth(*f.kids[i]);
        return acc;
    }
    case Op::Or: {
        Bitset acc = local_truth(*f.kids[0]);
        for (std::size_t i = 1; i < f.kids.size(); ++i)
            acc |= local_truth(*f.kids[i]);
        return acc;
    }
    case Op::Set:
        return a_.set_at(f.index);
    case Op::Pred:
        return interp_.pred(f.name);
    case Op::CounterGe: {
        int c = sigma_.index_of(f.name);
        if (c < 0)
            throw LogicError("unknown counter '" + f.name + "'");
        const auto& col = counters().values[static_cast<std::size_t>(c)];
        Bitset out(n);
        for (std::size_t v = 0; v < n; ++v)
            if (col[v] >= f.threshold)
                out.set(static_cast<Vertex>(v));
        return out;
    }
    default:
        throw LogicError("formula is not x-local: " + print(f));
    }
}

bool Evaluator::eval(const FormulaPtr& f, const Env& env)
{
    stack_.clear();
    for (const auto& [var, v] : env)
        stack_.push_back(Binding{var, v});
    return eval_rec(*f);
}

bool Evaluator::eval_rec(const Formula& f)
{
    switch (f.op) {
    case Op::True:
        return true;
    case Op::False:
        return false;
    case Op::Not:
        return !eval_rec(*f.kids[0]);
    case Op::And:
        for (const auto& k : f.kids)
            if (!eval_rec(*k))
                return false;
        return true;
    case Op::Or:
        for (const auto& k : f.kids)
            if (eval_rec(*k))
                return true;
        return false;
    case Op::Forall:
    case Op::Exists: {
        const bool want = f.op == Op::Exists;
        stack_.push_back(Binding{f.name, 0});
        bool result = !want;
        for (Vertex v = 0; v < g_.n(); ++v) {
            stack_.back().v = v;
            if (eval_rec(*f.kids[0]) == want) {
                result = want;
                break;
            }
        }
        stack_.pop_back();
        return result;
    }
    case Op::Eq:
        return value_rec(f.t1) == value_rec(f.t2);
    case Op::Adj:
        return g_.adjacent(value_rec(f.t1), value_rec(f.t2));
    case Op::Set:
        return a_.set_at(f.index).test(value_rec(f.t1));
    case Op::Pred:
        return interp_.pred(f.name).test(value_rec(f.t1));
    case Op::CounterGe: {
        int c = sigma_.index_of(f.name);
        if (c < 0)
            throw LogicError("unknown counter '" + f.name + "'");
        return counters().at(c, value_rec(f.t1)) >= f.threshold;
    }
    case Op::CardGe: {
        auto it = card_cache_.find(&f);
        std::int64_t count = 0;
        if (it != card_cache_.end()) {
            count = it->second;
        } else {
            count = static_cast<std::int64_t>(local_truth(*f.kids[0]).count());
            card_cache_.emplace(&f, count);
        }
        return count >= f.threshold;
    }
    }
    return false;
}

bool evaluate_naive(const Graph& g, const CounterSignature& sigma, const Interpretation& interp, const ITuple& a,
                    const FormulaPtr& phi, const Env& env)
{
    Evaluator ev(g, sigma, interp, a);
    return ev.eval(phi, env);
}

bool evaluate_naive(const Graph& g, const ITuple& a, const FormulaPtr& phi, const Env& env)
{
    static const CounterSignature empty_sigma;
    static const Interpretation empty_interp;
    return evaluate_naive(g, empty_sigma, empty_interp, a, phi, env);
}

}  // namespace fomax
