#include "doctest.h"

#include "../support.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/locality.hpp"
#include "fomax/parser.hpp"

using namespace fomax;
using namespace fomax::testing;

namespace {

// P3 with par = child -> parent, rooted at 0, and `levels` counters on par.
struct ParentP3 {
    Graph g = path(3);
    CounterSignature sigma;
    Interpretation interp;

    explicit ParentP3(int levels)
    {
        sigma.add_function("par");
        interp.funcs["par"] = {0, 0, 1};
        for (int i = 1; i <= levels; ++i)
            sigma.add_counter("g" + std::to_string(i), {"par", mk_true()});
    }
};

Graph star(int leaves)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v = 1; v <= leaves; ++v)
        e.emplace_back(0, v);
    return Graph(leaves + 1, e);
}

}  // namespace

TEST_CASE("compute_shroud follows the recurrence")
{
    CHECK(compute_shroud(path(3), ParentP3(0).sigma, ParentP3(0).interp).of(2) == std::vector<Vertex>{2});
    ParentP3 one(1);
    auto h1 = compute_shroud(one.g, one.sigma, one.interp);
    CHECK(h1.of(2) == std::vector<Vertex>{1, 2});
    ParentP3 two(2);
    auto h2 = compute_shroud(two.g, two.sigma, two.interp);
    CHECK(h2.of(2) == std::vector<Vertex>{0, 1, 2});
    CHECK(h2.max_size() <= 4);
}

TEST_CASE("h_center")
{
    ParentP3 one(1);
    auto h = compute_shroud(one.g, one.sigma, one.interp);
    CHECK(h_center(h, Bitset::full(3)) == Bitset::full(3));
    CHECK(h_center(h, Bitset(3)).none());
    // h(1) = {1, 0} leaves {1, 2}; h(2) = {2, 1} stays.
    CHECK(h_center(h, Bitset(3, {1, 2})) == Bitset(3, {2}));
}

TEST_CASE("census")
{
    ParentP3 one(1);
    ITuple empty({1}, 3);
    auto phi = mk_card_ge(mk_true(), 1);
    CHECK(census(one.g, one.sigma, one.interp, empty, Bitset(3), 2, *phi).counters.empty());
    Census n = census(one.g, one.sigma, one.interp, empty, Bitset(3, {2}), 2, *phi);
    CHECK(n.counter(0, 1) == 1);
    CHECK(n.theta_count(print(*mk_true())) == 1);
    Census all = census(one.g, one.sigma, one.interp, empty, Bitset::full(3), 2, *phi);
    CHECK(all.theta_count(print(*mk_true())) == 2);  // min(M, n)
}

TEST_CASE("restrict_to_subgraph: whole graph with zero census is the identity")
{
    auto phi = parse_sentence(corpus()[0].text, {1});
    Graph g = path(4);
    auto c = eliminate_all(phi, g);
    ITuple empty({1}, 4);
    Census zero = census(g, c.sigma, c.interp, empty, Bitset(4), c.M, *c.phi);
    auto r = restrict_to_subgraph(g, c.interp, c.sigma, c.phi, Bitset::full(4), zero);
    for (const auto& [name, set] : r.interp.preds)
        if (name.rfind("P_", 0) == 0)
            CHECK(set.none());
    for_each_tuple({1}, 4, [&](const ITuple& a) {
        CHECK(evaluate_naive(g, c.sigma, c.interp, a, c.phi) == evaluate_naive(r.graph, r.sigma, r.interp, a, r.phi));
    });
}

TEST_CASE("restrict_to_subgraph: empty Y gives a constant")
{
    auto phi = parse_sentence(corpus()[2].text, {1});
    Graph g = path(3);
    auto c = eliminate_all(phi, g);
    ITuple empty({1}, 3);
    Census n = census(g, c.sigma, c.interp, empty, Bitset::full(3), c.M, *c.phi);
    auto r = restrict_to_subgraph(g, c.interp, c.sigma, c.phi, Bitset(3), n);
    CHECK(r.graph.n() == 0);
    CHECK(evaluate_naive(r.graph, r.sigma, r.interp, ITuple({1}, 0), r.phi) ==
          evaluate_naive(g, c.sigma, c.interp, empty, c.phi));
}

TEST_CASE("localize agrees inside the h-center")
{
    struct Case {
        int formula;
        Graph g;
        Bitset y;
    };
    std::vector<Case> cases;
    cases.push_back({0, path(3), Bitset::full(3)});
    cases.push_back({0, path(3), Bitset(3, {0, 1})});
    cases.push_back({1, path(4), Bitset(4, {0, 1, 2})});
    cases.push_back({2, cycle(5), Bitset(5, {0, 1, 2, 3})});
    cases.push_back({3, path(5), Bitset(5, {1, 2, 3, 4})});
    for (const auto& cs : cases) {
        auto phi = parse_sentence(corpus()[static_cast<std::size_t>(cs.formula)].text, {1});
        auto loc = localize(cs.g, phi, cs.y);
        if (cs.y.count() == static_cast<std::size_t>(cs.g.n()))
            CHECK(loc.center == cs.y);
        CounterSignature plain;
        auto center = loc.center.members();
        for_each_tuple({1}, static_cast<int>(center.size()), [&](const ITuple& small) {
            ITuple a({1}, static_cast<std::size_t>(cs.g.n()));
            small.by_position(0).for_each([&](Vertex i) { a.by_position(0).set(center[static_cast<std::size_t>(i)]); });
            const auto& r = loc.restricted;
            ITuple local = r.localize_tuple(a);
            bool truth = evaluate_naive(cs.g, a, phi);
            CHECK(truth == evaluate_naive(r.graph, r.sigma, r.interp, local, r.phi));
            CHECK(truth == evaluate_naive(r.graph, plain, r.interp, local, loc.phi_loc));
        });
    }
}

TEST_CASE("counters_to_quantifiers")
{
    CounterSignature sigma;
    sigma.add_function("f");
    sigma.add_counter("g1", {"f", mk_true()});
    auto psi = counters_to_quantifiers(sigma, 0, 1, Term("x"));
    CHECK(print(*psi) == print(*parse_formula("(exists w0 (and (not (eq w0 x)) (eq (f f w0) x)))")));

    Graph s = star(3);
    Interpretation interp;
    interp.funcs["f"] = {0, 0, 0, 0};
    CounterSignature plain;
    ITuple a({1}, 4);
    CHECK(evaluate_naive(s, plain, interp, a, counters_to_quantifiers(sigma, 0, 3, Term("c")), {{"c", 0}}));
    CHECK(!evaluate_naive(s, plain, interp, a, counters_to_quantifiers(sigma, 0, 4, Term("c")), {{"c", 0}}));

    // Nested: g2 counts preimages in X_1 that themselves have g1 >= 1.
    CounterSignature nested;
    nested.add_function("f");
    nested.add_counter("g1", {"f", parse_formula("(X 1 x)")});
    nested.add_counter("g2", {"f", parse_formula("(or (cge g1 x 1) (X 1 x))")});
    auto psi2 = counters_to_quantifiers(nested, 1, 2, Term("c"));
    CHECK(print(*psi2).find("(X 1 w") != std::string::npos);
    Graph p = path(4);
    Interpretation chain;
    chain.funcs["f"] = {0, 0, 1, 2};
    for_each_tuple({1}, 4, [&](const ITuple& t) {
        auto table = evaluate_counters(p, chain, t, nested);
        for (Vertex v = 0; v < 4; ++v)
            for (std::int64_t m = 1; m <= 2; ++m)
                for (int gi = 0; gi < 2; ++gi)
                    CHECK((table.at(gi, v) >= m) ==
                          evaluate_naive(p, plain, chain, t, counters_to_quantifiers(nested, gi, m, Term("c")),
                                         {{"c", v}}));
    });
}
