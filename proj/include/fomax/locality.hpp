#pragma once
// Shrouds, censuses and restriction of a compiled sentence to an induced
// subgraph, plus re-expansion of counters into quantifiers.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fomax/bitset.hpp"
#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/qelim.hpp"
#include "fomax/signature.hpp"
#include "fomax/tuple.hpp"

namespace fomax {

struct Shroud {
    std::vector<std::vector<Vertex>> sets;  // h(v), sorted
    int levels = 0;

    std::size_t n() const { return sets.size(); }
    const std::vector<Vertex>& of(Vertex v) const { return sets[static_cast<std::size_t>(v)]; }
    std::size_t max_size() const;
    // h(X) as a bitset.
    Bitset image(const Bitset& x) const;
};

// h_0(v) = {v}; h_i(v) = h_{i-1}(v) plus f_i of each member, f_i the trigger
// function of the i-th counter.
Shroud compute_shroud(const Graph& g, const CounterSignature& sigma, const Interpretation& interp);

// Tighter shroud from the counter dependency order: a change at v reaches
// A_γ(v) = f_γ({v} ∪ A_γ'(v) for γ' used in γ's trigger), and
// h(v) = {v} ∪ every A_γ(v). Satisfies the same locality property.
Shroud dependency_shroud(const Graph& g, const CounterSignature& sigma, const Interpretation& interp);

// {v in Y : h(v) subset of Y}.
Bitset h_center(const Shroud& h, const Bitset& y);

// The distinct x-local bodies of cardinality atoms of phi, keyed by print().
std::map<std::string, FormulaPtr> card_bodies(const Formula& phi);

// Counts over the region D, capped at M: theta[print(θ)] = #{u in D : θ(u)},
// and counters[(γ, v)] for v outside D = #{u in D, u != v : f(u) = v, θ_γ(u)}.
// Zero entries are omitted so equal censuses compare equal.
struct Census {
    std::int64_t M = 1;
    Bitset region;
    std::map<std::string, std::int64_t> theta;
    std::map<std::pair<int, Vertex>, std::int64_t> counters;

    std::int64_t theta_count(const std::string& key) const;
    std::int64_t counter(int gamma, Vertex v) const;
    friend bool operator==(const Census& a, const Census& b)
    {
        return a.theta == b.theta && a.counters == b.counters;
    }
};

Census census(const Graph& g, const CounterSignature& sigma, const Interpretation& interp, const ITuple& a,
              const Bitset& region, std::int64_t M, const Formula& phi);

// Same from precomputed truth sets: fires[i] = where counter i's trigger
// holds, body_truth keyed like Census::theta.
Census census_from(const CounterSignature& sigma, const Interpretation& interp, const std::vector<Bitset>& fires,
                   const std::map<std::string, Bitset>& body_truth, const Bitset& region, std::int64_t M);

struct Restricted {
    Graph graph;                  // G[Y], vertices renumbered in increasing order
    std::vector<Vertex> to_global;
    std::vector<Vertex> to_local;  // -1 outside Y
    CounterSignature sigma;
    Interpretation interp;
    FormulaPtr phi;
    std::int64_t M = 1;

    ITuple localize_tuple(const ITuple& a) const;
    ITuple globalize_tuple(const ITuple& a, std::size_t n) const;
    Bitset localize_set(const Bitset& s) const;
};

// Delete V(G) \ Y given the census n over D = V(G) \ Y. Valid for tuples
// inside Y whose shadow over D is n.
Restricted restrict_to_subgraph(const Graph& g, const Interpretation& interp, const CounterSignature& sigma,
                                const FormulaPtr& phi, const Bitset& y, const Census& n);

// psi_{γ,m}(t): "at least m distinct preimages u != t with f(u) = t and θ(u)",
// nested counters expanded recursively.
FormulaPtr counters_to_quantifiers(const CounterSignature& sigma, int gamma, std::int64_t m, const Term& at);

// Replace counter atoms by psi formulas and #θ >= m by m distinct witnesses.
FormulaPtr expand_counters(const CounterSignature& sigma, const FormulaPtr& phi);

struct Localized {
    Compiled compiled;
    Shroud shroud;
    Bitset center;
    Restricted restricted;
    FormulaPtr phi_loc;  // first-order, no counters, over restricted.graph
};

Localized localize(const Graph& g, const FormulaPtr& phi, const Bitset& y, const ElimOptions& opts = {});

}  // namespace fomax
