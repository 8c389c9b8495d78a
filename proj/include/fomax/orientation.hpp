#pragma once

#include <string>
#include <vector>

#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/signature.hpp"

namespace fomax {

// Acyclic orientation along a smallest-last degeneracy order.
struct Orientation {
    int d = 0;                            // max out-degree
    std::vector<int> rank;                // position of each vertex in the order
    std::vector<std::vector<Vertex>> out;  // out[u][i] is the head labelled i+1
};

Orientation degeneracy_orientation(const Graph& g);

struct AdjacencyElimination {
    std::vector<std::string> functions;  // f1..fd
    Interpretation interp;
    FormulaPtr phi;
};

// Replaces every E(t1,t2) by t1!=t2 and (f_i(t1)=t2 or f_i(t2)=t1 for some i).
AdjacencyElimination eliminate_adjacency(const Graph& g, const FormulaPtr& phi);

}  // namespace fomax
