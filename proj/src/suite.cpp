#include "fomax/suite.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fomax/dp.hpp"
#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/parser.hpp"
#include "fomax/qelim.hpp"

namespace fomax {

const std::vector<NamedSentence>& builtin_sentences()
{
    static const std::vector<NamedSentence> list = {
        {"independent-set", "(forall x y (implies (and (X 1 x) (X 1 y)) (not (E x y))))"},
        {"distance-2-independent-set",
         "(forall x y (implies (and (X 1 x) (X 1 y) (not (eq x y))) "
         "(and (not (E x y)) (not (exists z (and (E x z) (E y z)))))))"},
        {"dominating-set", "(forall x (or (X 1 x) (exists y (and (X 1 y) (E x y)))))"},
        {"induced-matching",
         "(forall x (implies (X 1 x) (and (exists y (and (X 1 y) (E x y))) "
         "(forall y z (implies (and (X 1 y) (X 1 z) (E x y) (E x z)) (eq y z))))))"},
    };
    return list;
}

std::vector<Graph> connected_graphs_up_to_iso(int n)
{
    if (n < 0 || n > 6)
        throw GuardError("graph enumeration supports n <= 6");
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            slots.emplace_back(u, v);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::set<std::uint64_t> seen;
    std::vector<Graph> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1)
                edges.push_back(slots[i]);
        Graph g(n, edges);
        if (n > 1 && components(g).size() != 1)
            continue;
        std::iota(perm.begin(), perm.end(), 0);
        std::uint64_t best = ~std::uint64_t{0};
        do {
            std::uint64_t code = 0;
            for (auto [u, v] : edges) {
                int a = perm[static_cast<std::size_t>(u)], b = perm[static_cast<std::size_t>(v)];
                code |= std::uint64_t{1} << (std::min(a, b) * n + std::max(a, b));
            }
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (seen.insert(best).second)
            out.push_back(std::move(g));
    }
    return out;
}

namespace {

bool qelim_case(const Graph& g, const FormulaPtr& phi, const IndexSet& indices)
{
    Compiled c = eliminate_all(phi, g);
    const auto n = static_cast<std::size_t>(g.n());
    const std::size_t bits = n * indices.size();
    ITuple a(indices, n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
        for (std::size_t p = 0; p < indices.size(); ++p)
            for (std::size_t v = 0; v < n; ++v)
                a.by_position(p).assign(static_cast<Vertex>(v), code >> (p * n + v) & 1);
        if (evaluate_naive(g, a, phi) != evaluate_naive(g, c.sigma, c.interp, a, c.phi))
            return false;
    }
    return true;
}

bool dp_case(const Graph& g, const FormulaPtr& phi, const IndexSet& indices)
{
    auto w = WeightAssignment::unit(indices, g.n());
    Solution exact = solve_exact(g, w, phi);
    Solution brute = brute_force(g, w, phi, Bitset::full(static_cast<std::size_t>(g.n())), 64);
    if (exact.feasible != brute.feasible)
        return false;
    return !exact.feasible || (exact.value == brute.value && evaluate_naive(g, exact.tuple, phi));
}

}  // namespace

SuiteResult run_suite(const std::string& suite, int max_n, std::ostream& log)
{
    if (suite != "qelim" && suite != "dp")
        throw InputError("unknown suite: " + suite + " (expected qelim or dp)");
    SuiteResult res;
    for (const auto& s : builtin_sentences()) {
        FormulaPtr phi = parse_sentence(s.text, {1});
        IndexSet indices = indices_used(*phi);
        std::size_t fails = 0, cases = 0;
        for (int n = 1; n <= max_n; ++n)
            for (const Graph& g : connected_graphs_up_to_iso(n)) {
                ++cases;
                bool ok = suite == "qelim" ? qelim_case(g, phi, indices) : dp_case(g, phi, indices);
                if (!ok) {
                    ++fails;
                    log << "FAIL " << s.name << " on\n" << dump_graph(g);
                }
            }
        log << s.name << ": " << cases - fails << "/" << cases << " graphs agree\n";
        res.cases += cases;
        res.failures += fails;
    }
    return res;
}

}  // namespace fomax
