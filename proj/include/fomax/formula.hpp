#pragma once
// Formula AST for first-order sentences over graphs with set predicates,
// unary predicates/functions, counters and cardinality atoms.

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fomax {

// A variable under a chain of unary function applications. fns[0] is applied
// first, so {x, {f, g}} denotes g(f(x)).
struct Term {
    std::string var;
    std::vector<std::string> fns;

    Term() = default;
    explicit Term(std::string v) : var(std::move(v)) {}
    Term(std::string v, std::vector<std::string> f) : var(std::move(v)), fns(std::move(f)) {}

    bool is_var() const { return fns.empty(); }
    Term apply(const std::string& fn) const;
    Term apply_n(const std::string& fn, int times) const;
    // The subterm after the first `depth` applications.
    Term prefix(std::size_t depth) const;
    // Every subterm, shortest first, ending with *this.
    std::vector<Term> subterms() const;
    bool has_prefix(const Term& sub) const;
    // Replace the leading subterm `sub` by `with`; requires has_prefix(sub).
    Term replace_prefix(const Term& sub, const Term& with) const;
    // t[var := s]
    Term substitute(const std::string& v, const Term& s) const;

    friend bool operator==(const Term&, const Term&) = default;
};

// Shortest first, then by variable name, then by function names.
bool term_less(const Term& a, const Term& b);
struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return term_less(a, b); }
};
using TermSet = std::set<Term, TermLess>;

std::string to_string(const Term& t);

enum class Op { True, False, Not, And, Or, Forall, Exists, Eq, Adj, Set, Pred, CounterGe, CardGe };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Op op = Op::True;
    std::vector<FormulaPtr> kids;  // Not/And/Or operands, quantifier body, CardGe θ
    std::string name;              // bound variable, predicate, or counter symbol
    int index = 0;                 // set predicate index
    std::int64_t threshold = 0;    // CounterGe / CardGe
    Term t1;
    Term t2;

    bool is_atom() const
    {
        return op == Op::Eq || op == Op::Adj || op == Op::Set || op == Op::Pred || op == Op::CounterGe ||
               op == Op::CardGe;
    }
};

// Builders. The Boolean builders fold constants and flatten nested
// conjunctions/disjunctions; nothing else is rewritten.
FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_bool(bool value);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(std::vector<FormulaPtr> fs);
FormulaPtr mk_or(std::vector<FormulaPtr> fs);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_forall(std::string var, FormulaPtr body);
FormulaPtr mk_exists(std::string var, FormulaPtr body);
FormulaPtr mk_eq(Term a, Term b);
FormulaPtr mk_neq(Term a, Term b);
FormulaPtr mk_adj(Term a, Term b);
FormulaPtr mk_set(int index, Term t);
FormulaPtr mk_pred(std::string symbol, Term t);
// Thresholds below 1 fold to true.
FormulaPtr mk_counter_ge(std::string counter, Term t, std::int64_t m);
FormulaPtr mk_card_ge(FormulaPtr theta, std::int64_t m);

// Canonical s-expression text; parse(print(f)) reproduces f.
std::string print(const Formula& f);
inline std::string print(const FormulaPtr& f) { return print(*f); }

bool structurally_equal(const Formula& a, const Formula& b);

// Free variables; CardGe bodies are closed and contribute nothing.
std::set<std::string> free_vars(const Formula& f);
// Every term occurring outside CardGe bodies, closed under subterms.
TermSet term_set(const Formula& f);
bool mentions_var(const Formula& f, const std::string& var);

// Capture-free for our use: substitution never descends into CardGe bodies
// or below a quantifier rebinding `var`.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& with);
// Replace every occurrence of `sub` as a leading subterm.
FormulaPtr replace_subterm(const FormulaPtr& f, const Term& sub, const Term& with);

// Largest threshold of a counter or cardinality atom (set indices excluded).
std::int64_t max_constant(const Formula& f);

// x-local: quantifier-free, function-free, at most one variable. CardGe
// atoms are not allowed inside.
bool is_x_local(const Formula& f);
// The unique variable of an x-local formula, or "" when it has none.
std::string local_var(const Formula& f);

bool is_quantifier_free(const Formula& f);
bool contains_op(const Formula& f, Op op);

// Every distinct CardGe atom (by printed text), in first-occurrence order.
std::vector<FormulaPtr> card_atoms(const FormulaPtr& f);

}  // namespace fomax
