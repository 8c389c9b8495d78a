#pragma once
// Direct Tarskian semantics. This is the reference every compiler pass is
// tested against, so it favours clarity over speed.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/signature.hpp"
#include "fomax/tuple.hpp"

namespace fomax {

using Env = std::map<std::string, Vertex>;

// values[i][v] is counter i of the signature at vertex v (uncapped).
struct CounterTable {
    std::vector<std::vector<std::int64_t>> values;
    std::int64_t at(int counter, Vertex v) const
    {
        return values[static_cast<std::size_t>(counter)][static_cast<std::size_t>(v)];
    }
};

CounterTable evaluate_counters(const Graph& g, const Interpretation& interp, const ITuple& a,
                               const CounterSignature& sigma);

class Evaluator {
public:
    Evaluator(const Graph& g, const CounterSignature& sigma, const Interpretation& interp, const ITuple& a);

    bool eval(const FormulaPtr& f, const Env& env);
    Vertex value(const Term& t, const Env& env) const;

    // Truth set of an x-local formula over all vertices (bitset kernels).
    Bitset local_truth(const Formula& theta);
    // Truth of an x-local formula at one vertex.
    bool local_at(const Formula& theta, Vertex v);

    const CounterTable& counters();

private:
    struct Binding {
        std::string var;
        Vertex v;
    };
    bool eval_rec(const Formula& f);
    Vertex lookup(const std::string& var) const;
    Vertex value_rec(const Term& t) const;

    const Graph& g_;
    const CounterSignature& sigma_;
    const Interpretation& interp_;
    const ITuple& a_;
    std::optional<CounterTable> table_;
    std::unordered_map<const Formula*, std::int64_t> card_cache_;
    std::vector<Binding> stack_;
};

// Convenience wrapper; env must bind every free variable of phi.
bool evaluate_naive(const Graph& g, const CounterSignature& sigma, const Interpretation& interp, const ITuple& a,
                    const FormulaPtr& phi, const Env& env = {});

// Plain graph sentences (no counters, predicates or functions).
bool evaluate_naive(const Graph& g, const ITuple& a, const FormulaPtr& phi, const Env& env = {});

}  // namespace fomax
