#pragma once
// S-expression reader for formulas.
//
//   (forall x body) (exists x y body) (and ...) (or ...) (not a)
//   (implies a b) (iff a b) (eq t t) (E t t) (X i t) (P name t)
//   (cge name t m) (card-ge theta m) (true) (false)
//   term := var | (f name term)
//
// `;` starts a comment running to end of line.

#include <optional>
#include <string_view>
#include <vector>

#include "fomax/formula.hpp"

namespace fomax {

// Parse any formula. When `indices` is given, every X index must belong to it.
FormulaPtr parse_formula(std::string_view text, const std::vector<int>* indices = nullptr);

// Parse and require a sentence (no free variables).
FormulaPtr parse_sentence(std::string_view text, const std::vector<int>& indices);

// Set-predicate indices used anywhere in f, sorted.
std::vector<int> indices_used(const Formula& f);

}  // namespace fomax
