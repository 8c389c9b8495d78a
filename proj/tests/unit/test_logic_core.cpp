#include "doctest.h"

#include <random>

#include "../support.hpp"
#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/normal_form.hpp"
#include "fomax/parser.hpp"

using namespace fomax;
using namespace fomax::testing;

namespace {

const char* kIndependent = "(forall x y (implies (and (X 1 x) (X 1 y)) (not (E x y))))";
const char* kDistance2 =
    "(forall x y (implies (and (X 1 x) (X 1 y) (not (eq x y))) "
    "(and (not (E x y)) (not (exists z (and (E x z) (E y z)))))))";

ITuple tuple1(int n, std::initializer_list<Vertex> members)
{
    ITuple a({1}, static_cast<std::size_t>(n));
    for (Vertex v : members)
        a.set_at(1).set(v);
    return a;
}

// Random formulas over variables x, y using only constructs the printer and
// parser both cover.
FormulaPtr random_formula(std::mt19937_64& rng, int depth)
{
    auto pick = [&](int k) { return static_cast<int>(rng() % static_cast<unsigned>(k)); };
    auto term = [&] {
        Term t(pick(2) ? "x" : "y");
        for (int i = pick(3); i > 0; --i)
            t = t.apply(pick(2) ? "f" : "g");
        return t;
    };
    if (depth == 0 || pick(3) == 0) {
        switch (pick(7)) {
        case 0:
            return mk_eq(term(), term());
        case 1:
            return mk_adj(term(), term());
        case 2:
            return mk_set(1 + pick(2), term());
        case 3:
            return mk_pred("p", term());
        case 4:
            return mk_counter_ge("c", term(), 1 + pick(3));
        case 5:
            return mk_card_ge(mk_and(mk_set(1, Term("x")), mk_not(mk_pred("q", Term("x")))), 1 + pick(4));
        default:
            return pick(2) ? mk_true() : mk_false();
        }
    }
    switch (pick(5)) {
    case 0:
        return mk_not(random_formula(rng, depth - 1));
    case 1:
        return mk_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 2:
        return mk_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 3:
        return mk_forall(pick(2) ? "x" : "y", random_formula(rng, depth - 1));
    default:
        return mk_exists(pick(2) ? "x" : "y", random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("parse_sentence: spec examples")
{
    FormulaPtr d2 = parse_sentence(kDistance2, {1});
    REQUIRE(d2->op == Op::Forall);
    CHECK(d2->name == "x");
    REQUIRE(d2->kids[0]->op == Op::Forall);
    CHECK(d2->kids[0]->name == "y");
    CHECK(d2->kids[0]->kids[0]->op != Op::Forall);

    FormulaPtr refl = parse_sentence("(forall x (eq x x))", {1});
    CHECK(print(refl) == "(forall x (eq x x))");

    CHECK_THROWS_AS(parse_sentence("(forall x (X 7 x))", {1}), ParseError);
    CHECK_THROWS_AS(parse_sentence("(X 1 x)", {1}), InputError);
}

TEST_CASE("parser: syntax errors carry line and column")
{
    try {
        parse_formula("(forall x\n  (and (X 1 x) (bogus x)))");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(parse_formula("(and (true)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(cge c x 0)"), ParseError);
    CHECK_THROWS_AS(parse_formula("(card-ge (E x y) 1)"), ParseError);
    CHECK(print(parse_formula("; comment\n(true) ; trailing")) == "(true)");
}

TEST_CASE("parser: implication and biconditional are desugared")
{
    auto f = parse_formula("(implies (X 1 x) (iff (X 1 y) (true)))");
    CHECK(print(f).find("implies") == std::string::npos);
    CHECK(print(f).find("iff") == std::string::npos);
    Graph g(2, {{0, 1}});
    for (int mask = 0; mask < 4; ++mask) {
        ITuple a({1}, 2);
        a.set_at(1).assign(0, mask & 1);
        a.set_at(1).assign(1, mask & 2);
        for (Vertex x : {0, 1})
            for (Vertex y : {0, 1}) {
                bool expect = !a.set_at(1).test(x) || a.set_at(1).test(y);
                CHECK(evaluate_naive(g, a, f, {{"x", x}, {"y", y}}) == expect);
            }
    }
}

TEST_CASE("printer/parser round trip on random formulas")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        FormulaPtr f = random_formula(rng, 5);
        std::string text = print(f);
        FormulaPtr g = parse_formula(text);
        CHECK_MESSAGE(structurally_equal(*f, *g), text);
        CHECK(print(g) == text);
    }
}

TEST_CASE("evaluate_naive: spec examples")
{
    FormulaPtr is = parse_sentence(kIndependent, {1});
    Graph k2(2, {{0, 1}});
    CHECK_FALSE(evaluate_naive(k2, tuple1(2, {0, 1}), is));
    CHECK(evaluate_naive(path(3), tuple1(3, {0, 2}), is));
    for (const Graph& g : small_corpus())
        CHECK(evaluate_naive(g, tuple1(g.n(), {}), is));
}

TEST_CASE("evaluate_naive: errors")
{
    Graph g(2);
    ITuple a({1}, 2);
    CHECK_THROWS_AS(evaluate_naive(g, a, parse_formula("(X 1 x)")), LogicError);
    CHECK_THROWS_AS(evaluate_naive(g, a, parse_formula("(forall x (P p x))")), LogicError);
    CHECK_THROWS_AS(evaluate_naive(g, a, parse_formula("(forall x (cge c x 1))")), LogicError);
}

TEST_CASE("evaluate_counters: spec examples")
{
    // Star K_{1,3} with centre 0.
    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    Interpretation interp;
    interp.funcs["id"] = {0, 1, 2, 3};
    interp.funcs["up"] = {0, 0, 0, 0};
    ITuple a({1}, 4);

    CounterSignature ident;
    ident.add_function("id");
    ident.add_counter("c", {"id", mk_true()});
    auto t0 = evaluate_counters(star, interp, a, ident);
    for (Vertex v = 0; v < 4; ++v)
        CHECK(t0.at(0, v) == 0);

    CounterSignature sigma;
    sigma.add_function("up");
    sigma.add_counter("g1", {"up", mk_true()});
    sigma.add_counter("g2", {"up", mk_counter_ge("g1", Term("x"), 1)});
    auto t = evaluate_counters(star, interp, a, sigma);
    CHECK(t.at(0, 0) == 3);
    for (Vertex v = 1; v < 4; ++v)
        CHECK(t.at(0, v) == 0);
    CHECK(t.at(1, 0) == 0);

    CounterSignature bad;
    bad.add_function("up");
    CHECK_THROWS_AS(bad.add_counter("g", {"up", mk_counter_ge("later", Term("x"), 1)}), LogicError);
}

TEST_CASE("evaluate_counters: order within a domination level does not matter")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v = 1; v < n; ++v)
            edges.emplace_back(static_cast<Vertex>(rng() % static_cast<unsigned>(v)), v);
        Graph g(n, edges);
        Interpretation interp;
        std::vector<Vertex> up(static_cast<std::size_t>(n)), down(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) {
            up[static_cast<std::size_t>(v)] = v;
            down[static_cast<std::size_t>(v)] = v;
        }
        for (auto [p, c] : edges) {
            up[static_cast<std::size_t>(c)] = p;
            down[static_cast<std::size_t>(p)] = c;
        }
        interp.funcs["up"] = up;
        interp.funcs["down"] = down;
        ITuple a({1}, static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v)
            a.set_at(1).assign(v, rng() % 2);

        Trigger ta{"up", mk_set(1, Term("x"))};
        Trigger tb{"down", mk_not(mk_set(1, Term("x")))};
        Trigger tc{"up", mk_or(mk_counter_ge("a", Term("x"), 1), mk_counter_ge("b", Term("x"), 2))};
        CounterSignature s1, s2;
        for (auto* s : {&s1, &s2}) {
            s->add_function("up");
            s->add_function("down");
        }
        s1.add_counter("a", ta);
        s1.add_counter("b", tb);
        s1.add_counter("c", tc);
        s2.add_counter("b", tb);
        s2.add_counter("a", ta);
        s2.add_counter("c", tc);
        auto t1 = evaluate_counters(g, interp, a, s1);
        auto t2 = evaluate_counters(g, interp, a, s2);
        for (Vertex v = 0; v < n; ++v) {
            CHECK(t1.at(0, v) == t2.at(1, v));
            CHECK(t1.at(1, v) == t2.at(0, v));
            CHECK(t1.at(2, v) == t2.at(2, v));
        }
    }
}

TEST_CASE("evaluate_naive: card-ge equals an explicit count")
{
    const std::vector<FormulaPtr> bodies = {
        mk_set(1, Term("x")),
        mk_not(mk_set(1, Term("x"))),
        mk_and(mk_set(1, Term("x")), mk_set(2, Term("x"))),
        mk_or(mk_set(1, Term("x")), mk_not(mk_set(2, Term("x")))),
    };
    for (int n = 0; n <= 6; ++n) {
        Graph g(n);
        for_each_tuple({1, 2}, n, [&](const ITuple& a) {
            for (const auto& theta : bodies) {
                int count = 0;
                for (Vertex v = 0; v < n; ++v)
                    count += evaluate_naive(g, a, theta, {{"x", v}});
                for (int m = 1; m <= 7; ++m)
                    CHECK(evaluate_naive(g, a, mk_card_ge(theta, m)) == (count >= m));
            }
        });
    }
}

TEST_CASE("to_prenex_dnf")
{
    FormulaPtr pre = parse_formula("(forall x (exists y (or (X 1 x) (E x y))))");
    CHECK(print(to_prenex_dnf(pre)) == print(pre));

    FormulaPtr neg = mk_not(mk_forall("x", mk_pred("p", Term("x"))));
    FormulaPtr out = to_prenex_dnf(neg);
    REQUIRE(out->op == Op::Exists);
    REQUIRE(out->kids[0]->op == Op::Not);
    CHECK(out->kids[0]->kids[0]->op == Op::Pred);

    for (const char* text : {kIndependent, kDistance2}) {
        FormulaPtr phi = parse_sentence(text, {1});
        for (bool dnf : {false, true}) {
            FormulaPtr p = to_prenex_dnf(phi, dnf);
            Prenex split = to_prenex(phi);
            CHECK(is_quantifier_free(*split.matrix));
            for (int n = 1; n <= 4; ++n)
                for (const Graph& g : connected_graphs(n))
                    for_each_tuple({1}, n, [&](const ITuple& a) {
                        CHECK(evaluate_naive(g, a, phi) == evaluate_naive(g, a, p));
                    });
        }
    }
}

TEST_CASE("tuple_weight")
{
    auto w = WeightAssignment::unit({1}, 3);
    CHECK(tuple_weight(w, ITuple({1}, 3)) == 0);
    CHECK(tuple_weight(w, tuple1(3, {0, 2})) == 2);

    WeightAssignment w2({1, 2}, 1);
    w2.set(0, 0b01, 1);
    w2.set(0, 0b10, 2);
    w2.set(0, 0b11, 0);
    ITuple both({1, 2}, 1);
    both.set_at(1).set(0);
    both.set_at(2).set(0);
    CHECK(tuple_weight(w2, both) == 0);
    CHECK_THROWS_AS(w2.set(0, 0, 1), InputError);

    WeightAssignment big({1}, 2);
    big.set(0, 1, INT64_MAX);
    big.set(1, 1, 1);
    ITuple all({1}, 2);
    all.set_at(1).set(0);
    all.set_at(1).set(1);
    CHECK_THROWS_AS(tuple_weight(big, all), InputError);
}

TEST_CASE("check_monotone_sampled")
{
    FormulaPtr is = parse_sentence(kIndependent, {1});
    for (const Graph& g : small_corpus())
        CHECK_FALSE(check_monotone_sampled(g, is, {1}, 30, 11).counterexample_found);

    Graph k2(2, {{0, 1}});
    auto all = parse_sentence("(forall x (X 1 x))", {1});
    auto v = check_monotone_sampled(k2, all, {1}, 20, 3);
    REQUIRE(v.counterexample_found);
    CHECK(v.larger.set_at(1).count() == 2);
    CHECK(v.smaller.is_subtuple_of(v.larger));
    CHECK_FALSE(evaluate_naive(k2, v.smaller, all));

    CHECK_FALSE(check_monotone_sampled(k2, mk_true(), {1}, 20, 3).counterexample_found);

    // Deterministic under the seed.
    auto dom = parse_sentence("(forall x (or (X 1 x) (exists y (and (X 1 y) (E x y)))))", {1});
    auto r1 = check_monotone_sampled(path(5), dom, {1}, 50, 7);
    auto r2 = check_monotone_sampled(path(5), dom, {1}, 50, 7);
    CHECK(r1.counterexample_found == r2.counterexample_found);
    CHECK(r1.larger == r2.larger);
    CHECK(r1.smaller == r2.smaller);
}

TEST_CASE("monotone corpus sentences are closed under sub-tuples")
{
    for (const char* text : {kIndependent, kDistance2}) {
        FormulaPtr phi = parse_sentence(text, {1});
        for (int n = 1; n <= 5; ++n)
            for (const Graph& g : connected_graphs_up_to_iso(n))
                for (unsigned mask = 0; mask < (1u << n); ++mask) {
                    ITuple a({1}, static_cast<std::size_t>(n));
                    for (Vertex v = 0; v < n; ++v)
                        a.set_at(1).assign(v, mask >> v & 1);
                    if (!evaluate_naive(g, a, phi))
                        continue;
                    for (unsigned sub = mask; sub; sub = (sub - 1) & mask) {
                        ITuple b({1}, static_cast<std::size_t>(n));
                        for (Vertex v = 0; v < n; ++v)
                            b.set_at(1).assign(v, sub >> v & 1);
                        CHECK(evaluate_naive(g, b, phi));
                    }
                }
    }
}
