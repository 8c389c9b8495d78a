#pragma once
// Self-check suites behind the `check` command.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fomax/formula.hpp"
#include "fomax/graph.hpp"

namespace fomax {

struct NamedSentence {
    std::string name;
    std::string text;
};

// Independent set, distance-2 independent set, domination, induced matching.
const std::vector<NamedSentence>& builtin_sentences();

// Connected graphs on n vertices, one per isomorphism class (n <= 7).
std::vector<Graph> connected_graphs_up_to_iso(int n);

struct SuiteResult {
    std::size_t cases = 0;
    std::size_t failures = 0;
};

// "qelim": compiled sentence vs naive evaluation on every tuple.
// "dp": dp_optimize vs brute force, unit weights.
// Graphs: connected up to isomorphism with n <= max_n.
SuiteResult run_suite(const std::string& suite, int max_n, std::ostream& log);

}  // namespace fomax
