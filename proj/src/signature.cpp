#include "fomax/signature.hpp"

#include <functional>

#include "fomax/errors.hpp"

namespace fomax {

int CounterSignature::index_of(const std::string& counter) const
{
    auto it = counter_index_.find(counter);
    return it == counter_index_.end() ? -1 : it->second;
}

void CounterSignature::check_fresh(const std::string& name) const
{
    if (counter_index_.count(name) || predicates_.count(name) || functions_.count(name))
        throw LogicError("symbol '" + name + "' declared twice");
}

std::vector<int> CounterSignature::dependencies(const Formula& theta) const
{
    std::vector<int> out;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        if (f.op == Op::CounterGe) {
            int i = index_of(f.name);
            if (i < 0)
                throw LogicError("trigger references undeclared counter '" + f.name + "'");
            out.push_back(i);
        }
        for (const auto& k : f.kids)
            walk(*k);
    };
    walk(theta);
    return out;
}

void CounterSignature::add_counter(std::string name, Trigger trigger)
{
    check_fresh(name);
    if (!trigger.theta || !is_x_local(*trigger.theta))
        throw LogicError("trigger of '" + name + "' is not x-local");
    if (!functions_.count(trigger.fn))
        throw LogicError("trigger of '" + name + "' uses undeclared function '" + trigger.fn + "'");
    // Throws for forward or self references.
    dependencies(*trigger.theta);
    counter_index_[name] = static_cast<int>(counters_.size());
    counters_.push_back(CounterSymbol{std::move(name), std::move(trigger)});
}

void CounterSignature::add_predicate(const std::string& p)
{
    if (predicates_.count(p))
        return;
    check_fresh(p);
    predicates_.insert(p);
}

void CounterSignature::add_function(const std::string& f)
{
    if (functions_.count(f))
        return;
    check_fresh(f);
    functions_.insert(f);
}

std::int64_t CounterSignature::max_trigger_constant() const
{
    std::int64_t m = 0;
    for (const auto& c : counters_)
        m = std::max(m, max_constant(*c.trigger.theta));
    return m;
}

const Bitset& Interpretation::pred(const std::string& p) const
{
    auto it = preds.find(p);
    if (it == preds.end())
        throw LogicError("no interpretation for predicate '" + p + "'");
    return it->second;
}

const std::vector<Vertex>& Interpretation::func(const std::string& f) const
{
    auto it = funcs.find(f);
    if (it == funcs.end())
        throw LogicError("no interpretation for function '" + f + "'");
    return it->second;
}

void check_guarded(const Graph& g, const Interpretation& interp)
{
    for (const auto& [name, map] : interp.funcs) {
        if (static_cast<int>(map.size()) != g.n())
            throw LogicError("function '" + name + "' has wrong domain size");
        for (Vertex v = 0; v < g.n(); ++v) {
            Vertex w = map[static_cast<std::size_t>(v)];
            if (w != v && !g.adjacent(v, w))
                throw LogicError("function '" + name + "' is not guarded at vertex " + std::to_string(v));
        }
    }
}

std::string describe_signature(const CounterSignature& sigma)
{
    std::string out = "counters " + std::to_string(sigma.ell()) + "\n";
    for (const auto& c : sigma.counters())
        out += "  " + c.name + " = #(" + c.trigger.fn + ", " + print(*c.trigger.theta) + ")\n";
    out += "predicates";
    for (const auto& p : sigma.predicates())
        out += " " + p;
    out += "\nfunctions";
    for (const auto& f : sigma.functions())
        out += " " + f;
    out += "\n";
    return out;
}

std::string describe_interpretation(const Interpretation& interp)
{
    std::string out;
    for (const auto& [name, set] : interp.preds) {
        out += "pred " + name + ":";
        set.for_each([&](Vertex v) { out += " " + std::to_string(v); });
        out += "\n";
    }
    for (const auto& [name, map] : interp.funcs) {
        out += "func " + name + ":";
        for (Vertex v : map)
            out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

}  // namespace fomax
