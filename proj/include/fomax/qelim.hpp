#pragma once
// Quantifier elimination down to Boolean combinations of cardinality atoms
// over a counter signature with a concrete interpretation on one graph.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fomax/covers.hpp"
#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/normal_form.hpp"
#include "fomax/signature.hpp"
#include "fomax/templates.hpp"

namespace fomax {

struct ElimOptions {
    std::size_t dnf_cap = 4096;
    std::size_t template_cap = 200000;
    // Scaffolding depth cap; 0 means 2^s.
    int depth_cap = 0;
    // Harvest templates from assignments (true) or enumerate all templates
    // up to the scaffolding depth (false; tiny inputs only).
    bool harvest = true;
};

struct ElimStats {
    std::size_t quantifiers = 0;
    std::size_t conjuncts = 0;
    std::size_t templates = 0;
    std::size_t typed_splits = 0;
};

class Compiler {
public:
    Compiler(const Graph& g, CounterSignature sigma, Interpretation interp, ElimOptions opts = {});

    // (Q z) body, body quantifier-free. Returns a global quantifier-free
    // formula over the remaining free variables.
    FormulaPtr eliminate_quantifier(Op quantifier, const std::string& z, const FormulaPtr& body);

    // The existential closure over z of (conjunct and "the assignment
    // F-matches T"). Literals must not contain Adj or CardGe atoms.
    FormulaPtr eliminate_template(const Conjunct& psi, const std::string& z, const Template& t, const Scaffolding& f);

    // In/prt symbols for a scaffolding, interned by content.
    std::pair<std::string, std::string> represent(const Scaffolding& f);

    const CounterSignature& signature() const { return sigma_; }
    const Interpretation& interpretation() const { return interp_; }
    const ElimStats& stats() const { return stats_; }
    const Graph& graph() const { return g_; }

private:
    FormulaPtr eliminate_exists(const std::string& z, const FormulaPtr& body);
    FormulaPtr eliminate_conjunct(const std::string& z, Conjunct c);
    std::vector<Template> templates_for(const Conjunct& lits, const TermSet& x, const Scaffolding& f);
    const std::vector<Scaffolding>& scaffoldings(int s);
    // Vertices grouped by the specialisation of a one-variable body.
    std::vector<std::pair<Bitset, FormulaPtr>> type_split(const std::string& z, const FormulaPtr& body);
    // lambda for the subtree of r, with the A_{u,y} counters created on the way.
    FormulaPtr elimone(const Conjunct& psi2, const Template& q, const std::map<Term, int, TermLess>& mu2, int r,
                       int zr, const Scaffolding& f, const Template& t2, const std::string& prt_f);
    FormulaPtr fold(const FormulaPtr& f) const;

    // Interned symbols: a literal over x, folded when the set is empty/full.
    FormulaPtr pred_literal(const Bitset& set, const char* prefix, const Term& t);
    // Counter with trigger (fn, theta); empty name when theta is false.
    std::string intern_counter(const std::string& fn, const FormulaPtr& theta);
    std::string intern_function(const std::vector<Vertex>& map, const char* prefix);
    std::string intern_predicate(const Bitset& set, const char* prefix);
    std::string fresh(const std::string& prefix);

    Vertex eval(const Term& t, const std::map<std::string, Vertex>& env) const;

    const Graph& g_;
    CounterSignature sigma_;
    Interpretation interp_;
    ElimOptions opts_;
    ElimStats stats_;
    std::map<Bitset, std::string> pred_by_set_;
    std::map<std::vector<Vertex>, std::string> fn_by_map_;
    std::map<std::string, std::string> counter_by_trigger_;
    std::map<std::string, int> next_id_;
    std::map<int, std::vector<Scaffolding>> systems_;
};

struct Compiled {
    CounterSignature sigma;
    Interpretation interp;
    FormulaPtr phi;      // global quantifier-free sentence
    std::int64_t M = 1;  // largest constant, at least 1
    ElimStats stats;
};

// Adjacency elimination, prenex form, then innermost-out elimination.
Compiled eliminate_all(const FormulaPtr& phi, const Graph& g, const ElimOptions& opts = {});

// Static part of a conjunct: equality and fixed-predicate literals, which do
// not depend on the tuple.
bool is_static_literal(const Formula& lit);

}  // namespace fomax
