#pragma once
// Templates: an abstract rooted forest Q with a placement of terms on its
// nodes, and the quantifier-free formula recognising when an assignment
// embeds Q into a scaffolding.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fomax/covers.hpp"
#include "fomax/formula.hpp"
#include "fomax/signature.hpp"

namespace fomax {

struct Template {
    std::vector<int> parent;                     // -1 for roots
    std::vector<std::pair<Term, int>> placement;  // sorted by term_less

    int size() const { return static_cast<int>(parent.size()); }
    int node_of(const Term& t) const;  // -1 when t is not placed
    int depth(int node) const;         // roots have depth 0
    int levels() const;                // max depth + 1 (0 for the empty forest)
    int root_of(int node) const;
    bool is_ancestor_or_self(int anc, int node) const;
    // Nearest common ancestor, or -1 for different components.
    int nca(int a, int b) const;
    std::vector<int> children(int node) const;
    std::vector<Term> terms() const;

    // Isomorphism-invariant text.
    std::string canonical() const;
    std::string to_string() const;
};

// Relabels nodes deterministically; isomorphic templates become identical.
Template canonicalize(const Template& t);

// nullopt when both template invariants hold.
std::optional<std::string> check_template(const Template& t);

// All X-templates with at most `levels` levels, up to isomorphism.
// Throws GuardError after `cap` templates.
std::vector<Template> enumerate_templates(const TermSet& x, int levels, std::size_t cap = 100000);

// tau_{T,F} over the representation symbols (in_f, prt_f).
FormulaPtr template_match_formula(const Template& t, const std::string& in_f, const std::string& prt_f);

using TermValues = std::map<std::string, Vertex>;  // printed term -> vertex

Vertex term_value(const Interpretation& interp, const Term& t, const std::map<std::string, Vertex>& env);

// True when the term values embed the template into F (roots to roots,
// injective, parent-preserving).
bool matches_template(const Scaffolding& f, const Template& t, const Interpretation& interp,
                      const std::map<std::string, Vertex>& env);

// The unique template induced by an assignment whose term values all lie in
// V(F); nullopt when some value falls outside.
std::optional<Template> induced_template(const Scaffolding& f, const std::vector<Term>& x,
                                         const std::vector<Vertex>& values);

}  // namespace fomax
