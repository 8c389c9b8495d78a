#pragma once
// Exact optimisation of w(A) over tuples satisfying a compiled sentence, by
// dynamic programming over a tree decomposition, and the brute-force oracle.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fomax/bitset.hpp"
#include "fomax/covers.hpp"
#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/locality.hpp"
#include "fomax/qelim.hpp"
#include "fomax/signature.hpp"
#include "fomax/tuple.hpp"

namespace fomax {

struct Solution {
    bool feasible = false;
    ITuple tuple;
    std::int64_t value = 0;
};

// Lexicographic order on (chi(0), chi(1), ...); ties between equal-weight
// optima are broken towards the smaller tuple.
bool tuple_less(const ITuple& a, const ITuple& b);

// S = h(bag) restricted to the processed vertices.
Bitset boundary_shroud(const Shroud& h, const Bitset& bag, const Bitset& processed);

struct NiceNode {
    enum class Kind { Leaf, Introduce, Forget, Join };
    Kind kind = Kind::Leaf;
    Vertex v = -1;  // introduced or forgotten vertex
    std::vector<int> children;
    std::vector<Vertex> bag;  // sorted
};

// Leaves and root have empty bags; join children repeat the parent's bag.
struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;
};

NiceDecomposition make_nice(const TreeDecomposition& td);

struct DpOptions {
    // Largest table allowed at any node; 0 reads FOMAX_STATE_CAP, else 1e6.
    std::size_t state_cap = 0;
};

struct DpStats {
    // (table size, |S|) after each node.
    std::vector<std::pair<std::size_t, std::size_t>> tables;
    std::size_t max_table = 0;
};

// Best tuple of subsets of X satisfying phi (global quantifier-free over
// sigma/interp). Throws GuardError when a table exceeds the state cap.
Solution dp_optimize(const Graph& g, const TreeDecomposition& td, const Bitset& x, const WeightAssignment& w,
                     const CounterSignature& sigma, const FormulaPtr& phi, const Interpretation& interp,
                     const DpOptions& opts = {}, DpStats* stats = nullptr);

// Exhaustive search over tuples of subsets of X; |X|*|I| must not exceed cap.
Solution brute_force(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi, const Bitset& x,
                     std::size_t cap = 16);

// Separator decomposition plus dp_optimize with X = V(G). Negative weights
// are allowed.
Solution solve_exact(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi, const ElimOptions& eopts = {},
                     const DpOptions& dopts = {}, DpStats* stats = nullptr);

// "i: v1 v2 ..." lines, then value= and status=.
std::string dump_solution(const Solution& s, const char* status_if_feasible);

}  // namespace fomax
