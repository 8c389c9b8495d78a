#include "doctest.h"

#include <sstream>

#include "../support.hpp"
#include "fomax/driver.hpp"
#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/parser.hpp"
#include "fomax/suite.hpp"

using namespace fomax;
using namespace fomax::testing;

namespace {

const char* kIndependent = "(forall x y (implies (and (X 1 x) (X 1 y)) (not (E x y))))";
const char* kDistance2 =
    "(forall x y (implies (and (X 1 x) (X 1 y) (not (eq x y))) "
    "(and (not (E x y)) (not (exists z (and (E x z) (E y z)))))))";

FormulaPtr sentence(const char* text)
{
    return parse_sentence(text, {1});
}

Cover whole_cover(int n, int s)
{
    Cover c;
    c.members.push_back(Bitset::full(static_cast<std::size_t>(n)));
    c.s = s;
    c.delta = {1, 1};
    c.source = CoverSource::UserFile;
    return c;
}

std::int64_t brute_opt(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi)
{
    std::int64_t best = 0;
    for_each_tuple({1}, g.n(), [&](const ITuple& a) {
        if (evaluate_naive(g, a, phi))
            best = std::max(best, tuple_weight(w, a));
    });
    return best;
}

void check_report(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi, const SolveReport& r)
{
    REQUIRE(r.solution.feasible);
    CHECK(tuple_weight(w, r.solution.tuple) == r.solution.value);
    CHECK(evaluate_naive(g, r.solution.tuple, phi));
    std::int64_t best = -1;
    for (const auto& v : r.element_values)
        if (v)
            best = std::max(best, *v);
    CHECK(best == r.solution.value);
}

}  // namespace

TEST_CASE("meets_guarantee is exact")
{
    CHECK(meets_guarantee(2, Rational::make(2, 3), 3));
    CHECK_FALSE(meets_guarantee(1, Rational::make(2, 3), 2));
    CHECK(meets_guarantee(0, Rational::make(1, 5), 0));
    CHECK(meets_guarantee(INT64_MAX / 2, Rational::make(1, 2), INT64_MAX - 1));
    CHECK_FALSE(meets_guarantee(INT64_MAX / 2 - 1, Rational::make(1, 2), INT64_MAX - 1));
}

TEST_CASE("solve_approx: the s = 1 cover on P3 is too weak for the independent-set shroud")
{
    Graph p3 = path(3);
    Cover c = load_cover("1 2 3\n0 1\n1 2\n0 2\n", p3);
    CHECK_THROWS_AS(solve_approx(p3, WeightAssignment::unit({1}, 3), sentence(kIndependent), c), CoverTooWeak);
}

TEST_CASE("solve_approx: whole-graph cover gives the exact optimum")
{
    std::mt19937_64 rng(3);
    for (const Graph& g : small_corpus())
        for (const char* text : {kIndependent, kDistance2}) {
            if (g.n() == 0)
                continue;
            FormulaPtr phi = sentence(text);
            WeightAssignment w({1}, g.n());
            for (Vertex v = 0; v < g.n(); ++v)
                w.set(v, 1, static_cast<std::int64_t>(rng() % 5));
            SolveReport r = solve_approx(g, w, phi, whole_cover(g.n(), g.n()));
            check_report(g, w, phi, r);
            CHECK(r.solution.value == brute_opt(g, w, phi));
            CHECK(r.delta == Rational{1, 1});
        }
}

TEST_CASE("solve_approx: default cover on P4 with the distance-2 sentence")
{
    Graph p4 = path(4);
    auto w = WeightAssignment::unit({1}, 4);
    FormulaPtr phi = sentence(kDistance2);
    SolveReport r = solve_approx(p4, w, phi, std::nullopt);
    check_report(p4, w, phi, r);
    CHECK(meets_guarantee(r.solution.value, r.delta, brute_opt(p4, w, phi)));
    CHECK(static_cast<std::size_t>(r.cover_s) >= r.shroud_size);
    CHECK(r.monotonicity == Monotonicity::SampledOk);
}

TEST_CASE("solve_approx: guarantee on a non-trivial coloring cover")
{
    // Small s forces a real cover of several members.
    std::mt19937_64 rng(12);
    int nontrivial = 0;
    for (const Graph& g : small_corpus()) {
        if (g.n() < 3)
            continue;
        FormulaPtr phi = sentence(kIndependent);
        WeightAssignment w({1}, g.n());
        for (Vertex v = 0; v < g.n(); ++v)
            w.set(v, 1, 1 + static_cast<std::int64_t>(rng() % 4));
        SolveReport r = solve_approx(g, w, phi, std::nullopt);
        check_report(g, w, phi, r);
        CHECK(meets_guarantee(r.solution.value, r.delta, brute_opt(g, w, phi)));
        nontrivial += r.element_values.size() > 1;
    }
    CHECK(nontrivial > 5);
}

TEST_CASE("solve_approx: input checks and monotonicity field")
{
    Graph p3 = path(3);
    FormulaPtr is = sentence(kIndependent);
    WeightAssignment neg({1}, 3);
    neg.set(0, 1, -1);
    CHECK_THROWS_AS(solve_approx(p3, neg, is, std::nullopt), InputError);

    ApproxOptions asserted;
    asserted.monotone_trials = 0;
    CHECK(solve_approx(p3, WeightAssignment::unit({1}, 3), is, std::nullopt, asserted).monotonicity ==
          Monotonicity::Asserted);

    ApproxOptions low;
    low.cover_s = 1;
    CHECK_THROWS_AS(solve_approx(p3, WeightAssignment::unit({1}, 3), is, std::nullopt, low), CoverTooWeak);

    auto all = sentence("(forall x (X 1 x))");
    SolveReport r = solve_approx(Graph(2, {{0, 1}}), WeightAssignment::unit({1}, 2), all, std::nullopt);
    CHECK(r.monotonicity == Monotonicity::Violated);
}

TEST_CASE("solve_approx: infeasible when even the empty tuple fails")
{
    auto some = sentence("(exists x (X 1 x))");
    SolveReport r = solve_approx(path(2), WeightAssignment::unit({1}, 2), some, whole_cover(2, 2));
    CHECK(r.solution.feasible);
    CHECK(r.solution.value == 2);
    SolveReport none = solve_approx(path(2), WeightAssignment::unit({1}, 2), mk_false(), whole_cover(2, 2));
    CHECK_FALSE(none.solution.feasible);
    CHECK(format_report(none, false).rfind("status=infeasible\n", 0) == 0);
}

TEST_CASE("generators")
{
    for (int n : {0, 1, 2, 5, 9, 16}) {
        CHECK(generate(Family::Path, n, 1).m() == std::max(0, n - 1));
        CHECK(generate(Family::Cycle, n, 1).m() == (n >= 3 ? n : std::max(0, n - 1)));
        Graph grid = generate(Family::Grid, n, 1);
        CHECK(grid.n() == n);
        for (auto f : {Family::RandomPlanarish, Family::BoundedDegreeRandom}) {
            Graph a = generate(f, n, 77), b = generate(f, n, 77);
            CHECK(dump_graph(a) == dump_graph(b));
        }
        Graph bd = generate(Family::BoundedDegreeRandom, n, 5);
        for (Vertex v = 0; v < bd.n(); ++v)
            CHECK(bd.degree(v) <= 3);
    }
    CHECK(generate(Family::Grid, 9, 0).m() == 12);
    CHECK(parse_family("random-planarish") == Family::RandomPlanarish);
    CHECK(to_string(Family::BoundedDegreeRandom) == "bounded-degree-random");
    CHECK_THROWS_AS(parse_family("torus"), InputError);
}

TEST_CASE("bench: path family rows meet the guarantee and rerun identically")
{
    FormulaPtr is = sentence(kIndependent);
    auto rows = bench(Family::Path, {4, 5, 6, 7, 8}, is, 42);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        REQUIRE(r.opt.has_value());
        CHECK(r.guarantee_ok);
        CHECK(meets_guarantee(r.approx, r.delta, *r.opt));
    }
    auto again = bench(Family::Path, {4, 5, 6, 7, 8}, is, 42);
    CHECK(format_bench_text(rows, false) == format_bench_text(again, false));
    CHECK(format_bench_csv(rows, false) == format_bench_csv(again, false));
    CHECK(format_bench_csv(rows, false).rfind("n,m,opt,approx,delta,ratio,guarantee\n", 0) == 0);
}

TEST_CASE("bench: OPT column is marked beyond the brute-force cap")
{
    BenchOptions opts;
    opts.brute_force_cap = 4;
    auto rows = bench(Family::Cycle, {4, 5}, sentence(kIndependent), 1, opts);
    CHECK(rows[0].opt.has_value());
    CHECK_FALSE(rows[1].opt.has_value());
    std::string text = format_bench_text(rows, false);
    std::istringstream lines(text);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(first.find("—") == std::string::npos);
    CHECK(second.find("—") != std::string::npos);
}

TEST_CASE("check suite runner")
{
    std::ostringstream log;
    SuiteResult q = run_suite("qelim", 3, log);
    CHECK(q.failures == 0);
    CHECK(q.cases == 4 * (1 + 1 + 2));
    SuiteResult d = run_suite("dp", 3, log);
    CHECK(d.failures == 0);
    CHECK_THROWS_AS(run_suite("nope", 3, log), InputError);
    CHECK(fomax::connected_graphs_up_to_iso(4).size() == 6);
    CHECK(fomax::connected_graphs_up_to_iso(5).size() == 21);
}
