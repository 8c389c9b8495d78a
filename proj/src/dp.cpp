#include "fomax/dp.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"

namespace fomax {

bool tuple_less(const ITuple& a, const ITuple& b)
{
    for (std::size_t v = 0; v < a.universe(); ++v) {
        Pattern pa = a.chi(static_cast<Vertex>(v)), pb = b.chi(static_cast<Vertex>(v));
        if (pa != pb)
            return pa < pb;
    }
    return false;
}

Bitset boundary_shroud(const Shroud& h, const Bitset& bag, const Bitset& processed)
{
    return h.image(bag) & processed;
}

namespace {

int add_node(NiceDecomposition& nd, NiceNode node)
{
    nd.nodes.push_back(std::move(node));
    return static_cast<int>(nd.nodes.size()) - 1;
}

// Walks from `from` (bag `have`) to a node whose bag is `want`.
int retarget(NiceDecomposition& nd, int from, std::vector<Vertex> have, const std::vector<Vertex>& want)
{
    for (Vertex v : std::vector<Vertex>(have)) {
        if (std::binary_search(want.begin(), want.end(), v))
            continue;
        have.erase(std::find(have.begin(), have.end(), v));
        from = add_node(nd, {NiceNode::Kind::Forget, v, {from}, have});
    }
    for (Vertex v : want) {
        if (std::binary_search(have.begin(), have.end(), v))
            continue;
        have.insert(std::upper_bound(have.begin(), have.end(), v), v);
        from = add_node(nd, {NiceNode::Kind::Introduce, v, {from}, have});
    }
    return from;
}

int build_nice(NiceDecomposition& nd, const TreeDecomposition& td, const std::vector<std::vector<int>>& kids, int t)
{
    std::vector<Vertex> bag = td.bags[static_cast<std::size_t>(t)];
    std::sort(bag.begin(), bag.end());
    std::vector<int> chains;
    for (int c : kids[static_cast<std::size_t>(t)]) {
        int sub = build_nice(nd, td, kids, c);
        chains.push_back(retarget(nd, sub, nd.nodes[static_cast<std::size_t>(sub)].bag, bag));
    }
    if (chains.empty())
        return retarget(nd, add_node(nd, {NiceNode::Kind::Leaf, -1, {}, {}}), {}, bag);
    int cur = chains[0];
    for (std::size_t i = 1; i < chains.size(); ++i)
        cur = add_node(nd, {NiceNode::Kind::Join, -1, {cur, chains[i]}, bag});
    return cur;
}

}  // namespace

NiceDecomposition make_nice(const TreeDecomposition& td)
{
    NiceDecomposition nd;
    if (td.root < 0) {
        nd.root = add_node(nd, {NiceNode::Kind::Leaf, -1, {}, {}});
        return nd;
    }
    auto kids = td.children();
    int top = build_nice(nd, td, kids, td.root);
    nd.root = retarget(nd, top, nd.nodes[static_cast<std::size_t>(top)].bag, {});
    return nd;
}

namespace {

struct Entry {
    std::int64_t weight = 0;
    ITuple witness;
};

using Table = std::map<std::string, Entry>;

std::size_t resolve_cap(std::size_t requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("FOMAX_STATE_CAP")) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            throw InputError(std::string("FOMAX_STATE_CAP is not a number: ") + env);
        }
    }
    return 1000000;
}

class Dp {
public:
    Dp(const Graph& g, const Bitset& x, const WeightAssignment& w, const CounterSignature& sigma,
       const FormulaPtr& phi, const Interpretation& interp, std::size_t cap, DpStats* stats)
        : g_(g), x_(x), w_(w), sigma_(sigma), phi_(phi), interp_(interp), cap_(cap), stats_(stats)
    {
        h_ = dependency_shroud(g, sigma, interp);
        for (const auto& [key, body] : card_bodies(*phi))
            bodies_.emplace_back(key, body);
        M_ = std::max<std::int64_t>({1, max_constant(*phi), sigma.max_trigger_constant()});
    }

    Solution run(const NiceDecomposition& nd)
    {
        Bitset processed(static_cast<std::size_t>(g_.n()));
        Table root = solve(nd, nd.root, processed);
        Solution best;
        for (auto& [key, e] : root) {
            if (!evaluate_naive(g_, sigma_, interp_, e.witness, phi_))
                continue;
            if (!best.feasible || e.weight > best.value ||
                (e.weight == best.value && tuple_less(e.witness, best.tuple))) {
                best.feasible = true;
                best.value = e.weight;
                best.tuple = e.witness;
            }
        }
        return best;
    }

private:
    // Key: the witness pattern on S and its census over processed \ S.
    std::string key(const ITuple& a, const Bitset& bag, const Bitset& processed)
    {
        Bitset s = boundary_shroud(h_, bag, processed);
        Bitset d = processed;
        d.subtract(s);
        Evaluator ev(g_, sigma_, interp_, a);
        std::vector<Bitset> fires;
        for (const auto& c : sigma_.counters())
            fires.push_back(ev.local_truth(*c.trigger.theta));
        std::map<std::string, Bitset> truth;
        for (const auto& [k, body] : bodies_)
            truth.emplace(k, ev.local_truth(*body));
        Census n = census_from(sigma_, interp_, fires, truth, d, M_);
        std::ostringstream out;
        s.for_each([&](Vertex v) { out << v << ':' << a.chi(v) << ','; });
        out << '|';
        for (std::size_t i = 0; i < bodies_.size(); ++i)
            out << n.theta_count(bodies_[i].first) << ',';
        out << '|';
        for (const auto& [gv, c] : n.counters)
            out << gv.first << '.' << gv.second << '=' << c << ',';
        return out.str();
    }

    void offer(Table& t, const Bitset& bag, const Bitset& processed, std::int64_t weight, ITuple witness)
    {
        std::string k = key(witness, bag, processed);
        auto it = t.find(k);
        if (it == t.end()) {
            t.emplace(std::move(k), Entry{weight, std::move(witness)});
            if (t.size() > cap_)
                throw GuardError("DP table exceeds the state cap of " + std::to_string(cap_) +
                                 " (set --state-cap or FOMAX_STATE_CAP)");
            return;
        }
        Entry& e = it->second;
        if (weight > e.weight || (weight == e.weight && tuple_less(witness, e.witness)))
            e = Entry{weight, std::move(witness)};
    }

    Table solve(const NiceDecomposition& nd, int id, Bitset& processed)
    {
        const NiceNode& node = nd.nodes[static_cast<std::size_t>(id)];
        Bitset bag = Bitset::from_vector(static_cast<std::size_t>(g_.n()), node.bag);
        Table out;
        switch (node.kind) {
        case NiceNode::Kind::Leaf: {
            ITuple empty(w_.indices(), static_cast<std::size_t>(g_.n()));
            offer(out, bag, processed, 0, std::move(empty));
            break;
        }
        case NiceNode::Kind::Introduce: {
            Table child = solve(nd, node.children[0], processed);
            processed.set(node.v);
            const Pattern top = x_.test(node.v) ? Pattern{1} << w_.indices().size() : 1;
            for (auto& [k, e] : child)
                for (Pattern p = 0; p < top; ++p) {
                    ITuple a = e.witness;
                    a.set_chi(node.v, p);
                    offer(out, bag, processed, checked_add(e.weight, w_.get(node.v, p)), std::move(a));
                }
            break;
        }
        case NiceNode::Kind::Forget: {
            Table child = solve(nd, node.children[0], processed);
            for (auto& [k, e] : child)
                offer(out, bag, processed, e.weight, std::move(e.witness));
            break;
        }
        case NiceNode::Kind::Join: {
            Bitset left_done = processed;
            Table left = solve(nd, node.children[0], left_done);
            Bitset right_done = processed;
            Table right = solve(nd, node.children[1], right_done);
            processed = left_done | right_done;
            auto bag_pattern = [&](const ITuple& a) {
                std::vector<Pattern> p;
                for (Vertex v : node.bag)
                    p.push_back(a.chi(v));
                return p;
            };
            std::map<std::vector<Pattern>, std::vector<const Entry*>> by_bag;
            for (const auto& [k, e] : right)
                by_bag[bag_pattern(e.witness)].push_back(&e);
            for (const auto& [k, e] : left) {
                auto it = by_bag.find(bag_pattern(e.witness));
                if (it == by_bag.end())
                    continue;
                std::int64_t shared = 0;
                for (Vertex v : node.bag)
                    shared = checked_add(shared, w_.get(v, e.witness.chi(v)));
                for (const Entry* r : it->second) {
                    ITuple a = e.witness;
                    for (std::size_t p = 0; p < a.indices().size(); ++p)
                        a.by_position(p) |= r->witness.by_position(p);
                    offer(out, bag, processed, checked_add(e.weight, checked_add(r->weight, -shared)), std::move(a));
                }
            }
            break;
        }
        }
        if (stats_) {
            stats_->tables.emplace_back(out.size(), boundary_shroud(h_, bag, processed).count());
            stats_->max_table = std::max(stats_->max_table, out.size());
        }
        return out;
    }

    const Graph& g_;
    const Bitset& x_;
    const WeightAssignment& w_;
    const CounterSignature& sigma_;
    FormulaPtr phi_;
    const Interpretation& interp_;
    std::size_t cap_;
    DpStats* stats_;
    Shroud h_;
    std::vector<std::pair<std::string, FormulaPtr>> bodies_;
    std::int64_t M_ = 1;
};

}  // namespace

Solution dp_optimize(const Graph& g, const TreeDecomposition& td, const Bitset& x, const WeightAssignment& w,
                     const CounterSignature& sigma, const FormulaPtr& phi, const Interpretation& interp,
                     const DpOptions& opts, DpStats* stats)
{
    if (w.n() != g.n() || x.size() != static_cast<std::size_t>(g.n()))
        throw LogicError("dp_optimize: weight table or X does not match the graph");
    if (auto bad = validate_tree_decomposition(g, td))
        throw LogicError("dp_optimize: invalid tree decomposition: " + *bad);
    Dp dp(g, x, w, sigma, phi, interp, resolve_cap(opts.state_cap), stats);
    return dp.run(make_nice(td));
}

Solution brute_force(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi, const Bitset& x,
                     std::size_t cap)
{
    const auto xs = x.members();
    const std::size_t k = w.indices().size();
    if (xs.size() * k > cap)
        throw GuardError("brute force needs |X|*|I| <= " + std::to_string(cap) + ", got " +
                         std::to_string(xs.size() * k));
    const Pattern per = Pattern{1} << k;
    ITuple a(w.indices(), static_cast<std::size_t>(g.n()));
    std::vector<Pattern> chi(xs.size(), 0);
    Solution best;
    while (true) {
        std::int64_t weight = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            a.set_chi(xs[i], chi[i]);
            weight = checked_add(weight, w.get(xs[i], chi[i]));
        }
        if ((!best.feasible || weight > best.value || (weight == best.value && tuple_less(a, best.tuple))) &&
            evaluate_naive(g, a, phi)) {
            best.feasible = true;
            best.value = weight;
            best.tuple = a;
        }
        std::size_t i = 0;
        while (i < chi.size() && ++chi[i] == per)
            chi[i++] = 0;
        if (i == chi.size())
            break;
    }
    return best;
}

Solution solve_exact(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi, const ElimOptions& eopts,
                     const DpOptions& dopts, DpStats* stats)
{
    if (g.n() == 0)
        return brute_force(g, w, phi, Bitset(0));
    Compiled c = eliminate_all(phi, g, eopts);
    TreeDecomposition td = separator_decomposition(g);
    return dp_optimize(g, td, Bitset::full(static_cast<std::size_t>(g.n())), w, c.sigma, c.phi, c.interp, dopts,
                       stats);
}

std::string dump_solution(const Solution& s, const char* status_if_feasible)
{
    if (!s.feasible)
        return "status=infeasible\n";
    std::string out = s.tuple.to_string();
    if (!out.empty() && out.back() != '\n')
        out += '\n';
    out += "value=" + std::to_string(s.value) + "\nstatus=" + status_if_feasible + "\n";
    return out;
}

}  // namespace fomax
