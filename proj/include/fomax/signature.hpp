#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fomax/bitset.hpp"
#include "fomax/formula.hpp"
#include "fomax/graph.hpp"

namespace fomax {

// gamma(v) = #{u != v : fn(u) = v and theta(u)}.
struct Trigger {
    std::string fn;
    FormulaPtr theta;  // x-local
};

struct CounterSymbol {
    std::string name;
    Trigger trigger;
};

class CounterSignature {
public:
    const std::vector<CounterSymbol>& counters() const { return counters_; }
    const std::set<std::string>& predicates() const { return predicates_; }
    const std::set<std::string>& functions() const { return functions_; }
    std::size_t ell() const { return counters_.size(); }

    // -1 when absent.
    int index_of(const std::string& counter) const;
    bool has_counter(const std::string& counter) const { return index_of(counter) >= 0; }

    // Appends a counter; throws LogicError when theta mentions a counter that
    // is not already declared, or the name is taken.
    void add_counter(std::string name, Trigger trigger);
    void add_predicate(const std::string& p);
    void add_function(const std::string& f);

    // Largest constant across all triggers.
    std::int64_t max_trigger_constant() const;

    // Counters referenced by theta, as indices.
    std::vector<int> dependencies(const Formula& theta) const;

private:
    void check_fresh(const std::string& name) const;

    std::vector<CounterSymbol> counters_;
    std::map<std::string, int> counter_index_;
    std::set<std::string> predicates_;
    std::set<std::string> functions_;
};

struct Interpretation {
    std::map<std::string, Bitset> preds;
    std::map<std::string, std::vector<Vertex>> funcs;

    const Bitset& pred(const std::string& p) const;
    const std::vector<Vertex>& func(const std::string& f) const;
};

// Throws LogicError when some f(v) is neither v nor a neighbour of v.
void check_guarded(const Graph& g, const Interpretation& interp);

// Signature listing and interpretation tables, for the eliminate command.
std::string describe_signature(const CounterSignature& sigma);
std::string describe_interpretation(const Interpretation& interp);

}  // namespace fomax
