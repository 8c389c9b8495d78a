#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/tuple.hpp"

namespace fomax {

// Negations pushed down to atoms.
FormulaPtr to_nnf(const FormulaPtr& f);

struct Prenex {
    std::vector<std::pair<Op, std::string>> prefix;  // outermost first
    FormulaPtr matrix;                               // NNF, quantifier-free
    FormulaPtr rebuild() const;
};

// Bound variables are renamed apart first, so quantifiers can be pulled out
// of conjunctions and disjunctions. Assumes a nonempty domain.
Prenex to_prenex(const FormulaPtr& f);

// Equivalent sentence in prenex form; with dnf=true the matrix is in DNF.
FormulaPtr to_prenex_dnf(const FormulaPtr& f, bool dnf = false);

using Conjunct = std::vector<FormulaPtr>;  // literals: atoms or negated atoms

// DNF of a quantifier-free formula. Conjuncts with complementary literals or
// trivially false equalities are dropped; t=t literals are removed.
// Throws GuardError when more than `cap` conjuncts would be produced.
std::vector<Conjunct> to_dnf(const FormulaPtr& qf, std::size_t cap);
FormulaPtr from_dnf(const std::vector<Conjunct>& dnf);

bool is_literal(const Formula& f);
const Formula& literal_atom(const Formula& lit);
bool literal_positive(const Formula& lit);

struct MonotoneVerdict {
    bool counterexample_found = false;
    ITuple larger;
    ITuple smaller;
};

// Samples satisfying tuples and tests random sub-tuples. Deterministic in seed.
MonotoneVerdict check_monotone_sampled(const Graph& g, const FormulaPtr& phi, const IndexSet& indices, int trials,
                                       std::uint64_t seed);

}  // namespace fomax
