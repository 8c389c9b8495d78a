// Command-line front end. Exit codes: 0 ok, 1 infeasible, 2 input error,
// 3 resource guard.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fomax/covers.hpp"
#include "fomax/dp.hpp"
#include "fomax/driver.hpp"
#include "fomax/errors.hpp"
#include "fomax/parser.hpp"
#include "fomax/qelim.hpp"
#include "fomax/signature.hpp"
#include "fomax/suite.hpp"

using namespace fomax;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;
constexpr int kGuard = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FormulaPtr read_sentence(const std::string& path)
{
    std::string text = read_file(path);
    FormulaPtr f = parse_formula(text);
    return parse_sentence(text, indices_used(*f));
}

struct Common {
    std::string graph, weights, formula, cover, out;
    int s = 0;
    int depth_cap = 0;
    std::size_t state_cap = 0;
    std::uint64_t seed = 1;
    bool timings = false;
};

void emit(const Common& c, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + c.out);
    out << text;
}

WeightAssignment read_weights(const Common& c, const Graph& g, const FormulaPtr& phi)
{
    IndexSet indices = indices_used(*phi);
    if (indices.empty())
        indices = {1};
    if (c.weights.empty())
        return WeightAssignment::unit(indices, g.n());
    return load_weights(read_file(c.weights), g, indices);
}

ElimOptions elim_options(const Common& c)
{
    ElimOptions e;
    e.depth_cap = c.depth_cap;
    return e;
}

int cmd_solve_exact(const Common& c)
{
    Graph g = load_graph(read_file(c.graph));
    FormulaPtr phi = read_sentence(c.formula);
    WeightAssignment w = read_weights(c, g, phi);
    DpOptions d;
    d.state_cap = c.state_cap;
    Solution s = solve_exact(g, w, phi, elim_options(c), d);
    emit(c, dump_solution(s, "optimal"));
    return s.feasible ? kOk : kInfeasible;
}

int cmd_oracle(const Common& c)
{
    Graph g = load_graph(read_file(c.graph));
    FormulaPtr phi = read_sentence(c.formula);
    WeightAssignment w = read_weights(c, g, phi);
    Solution s = brute_force(g, w, phi, Bitset::full(static_cast<std::size_t>(g.n())));
    emit(c, dump_solution(s, "optimal"));
    return s.feasible ? kOk : kInfeasible;
}

int cmd_solve_approx(const Common& c, int monotone_trials)
{
    Graph g = load_graph(read_file(c.graph));
    FormulaPtr phi = read_sentence(c.formula);
    WeightAssignment w = read_weights(c, g, phi);
    ApproxOptions o;
    o.elim = elim_options(c);
    o.dp.state_cap = c.state_cap;
    o.seed = c.seed;
    o.monotone_trials = monotone_trials;
    o.cover_s = c.s;
    std::optional<Cover> cover;
    if (!c.cover.empty())
        cover = load_cover(read_file(c.cover), g);
    SolveReport r = solve_approx(g, w, phi, cover, o);
    if (r.monotonicity == Monotonicity::Violated)
        std::cerr << "warning: sampled a monotonicity counterexample; the guarantee does not apply\n";
    emit(c, format_report(r, c.timings));
    return r.solution.feasible ? kOk : kInfeasible;
}

int cmd_eliminate(const Common& c)
{
    Graph g = load_graph(read_file(c.graph));
    FormulaPtr phi = read_sentence(c.formula);
    Compiled comp = eliminate_all(phi, g, elim_options(c));
    std::ostringstream out;
    out << "phi=" << print(comp.phi) << "\n";
    out << "M=" << comp.M << "\n";
    out << "counters=" << comp.sigma.ell() << "\n";
    out << describe_signature(comp.sigma);
    out << describe_interpretation(comp.interp);
    out << "stats quantifiers=" << comp.stats.quantifiers << " conjuncts=" << comp.stats.conjuncts
        << " templates=" << comp.stats.templates << " typed_splits=" << comp.stats.typed_splits << "\n";
    emit(c, out.str());
    return kOk;
}

int cmd_cover(const Common& c, bool verify)
{
    Graph g = load_graph(read_file(c.graph));
    if (c.s < 1)
        throw InputError("cover needs --s >= 1");
    int cap = c.depth_cap > 0 ? c.depth_cap : (c.s >= 30 ? g.n() : std::min(g.n(), 1 << c.s));
    Cover cv = generic_cover_from_coloring(g, treedepth_coloring(g, c.s, std::max(1, cap)), c.s);
    std::string text = dump_cover(cv);
    if (verify)
        text += "# verified delta " + verify_genericity(g.n(), cv.members, c.s).to_string() + "\n";
    emit(c, text);
    return kOk;
}

int cmd_bench(const Common& c, const std::string& family, const std::vector<int>& sizes, bool csv,
              int monotone_trials)
{
    FormulaPtr phi = read_sentence(c.formula);
    BenchOptions b;
    b.approx.elim = elim_options(c);
    b.approx.dp.state_cap = c.state_cap;
    b.approx.monotone_trials = monotone_trials;
    b.timings = c.timings;
    auto rows = bench(parse_family(family), sizes, phi, c.seed, b);
    emit(c, csv ? format_bench_csv(rows, c.timings) : format_bench_text(rows, c.timings));
    return kOk;
}

// "4..8" or "4,5,9".
std::vector<int> parse_sizes(const std::string& text)
{
    std::vector<int> out;
    try {
        auto dots = text.find("..");
        if (dots != std::string::npos) {
            int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
            for (int n = lo; n <= hi; ++n)
                out.push_back(n);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(std::stoi(item));
        }
    } catch (const std::logic_error&) {
        throw InputError("bad --sizes: " + text);
    }
    for (int n : out)
        if (n < 0)
            throw InputError("bad --sizes: " + text);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted first-order optimisation on sparse graphs"};
    app.require_subcommand(1);
    Common c;
    int monotone_trials = 64;
    bool verify = false, csv = false;
    std::string suite = "qelim", family = "path", sizes = "4..8";
    int max_n = 4;

    auto add_graph = [&](CLI::App* sub) { sub->add_option("--graph", c.graph, "graph file")->required(); };
    auto add_formula = [&](CLI::App* sub) { sub->add_option("--formula", c.formula, "sentence file")->required(); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out, "write output here instead of stdout"); };
    auto add_limits = [&](CLI::App* sub) {
        sub->add_option("--depth-cap", c.depth_cap, "scaffolding depth cap (0: 2^s)");
        sub->add_option("--state-cap", c.state_cap, "DP table size cap (0: FOMAX_STATE_CAP or 1e6)");
    };

    auto* approx = app.add_subcommand("solve-approx", "approximate maximisation over a cover");
    add_graph(approx);
    add_formula(approx);
    approx->add_option("--weights", c.weights, "weight file (default: unit weights)");
    approx->add_option("--cover", c.cover, "cover file (default: treedepth colouring cover)");
    approx->add_option("--s", c.s, "s for the colouring cover (default: shroud size)");
    approx->add_option("--seed", c.seed, "seed for monotonicity sampling");
    approx->add_option("--monotone-trials", monotone_trials, "0 asserts monotonicity without sampling");
    approx->add_flag("--timings", c.timings, "report stage timings");
    add_limits(approx);
    add_out(approx);

    auto* exact = app.add_subcommand("solve-exact", "exact optimisation; negative weights allowed");
    add_graph(exact);
    add_formula(exact);
    exact->add_option("--weights", c.weights, "weight file (default: unit weights)");
    add_limits(exact);
    add_out(exact);

    auto* elim = app.add_subcommand("eliminate", "compile a sentence against a graph");
    add_graph(elim);
    add_formula(elim);
    elim->add_option("--depth-cap", c.depth_cap, "scaffolding depth cap (0: 2^s)");
    add_out(elim);

    auto* cover = app.add_subcommand("cover", "treedepth colouring cover");
    add_graph(cover);
    cover->add_option("--s", c.s, "cover parameter s")->required();
    cover->add_option("--depth-cap", c.depth_cap, "depth cap for unions of s classes (0: 2^s)");
    cover->add_flag("--verify", verify, "append the exhaustively verified delta");
    add_out(cover);

    auto* oracle = app.add_subcommand("oracle", "brute-force optimum");
    add_graph(oracle);
    add_formula(oracle);
    oracle->add_option("--weights", c.weights, "weight file (default: unit weights)");
    add_out(oracle);

    auto* check = app.add_subcommand("check", "built-in oracle suites");
    check->add_option("--suite", suite, "qelim or dp")->capture_default_str();
    check->add_option("--max-n", max_n, "largest graph size")->capture_default_str();

    auto* bench_cmd = app.add_subcommand("bench", "approximation ratio table");
    add_formula(bench_cmd);
    bench_cmd->add_option("--family", family, "path, cycle, grid, random-planarish, bounded-degree-random")
        ->capture_default_str();
    bench_cmd->add_option("--sizes", sizes, "e.g. 4..8 or 4,6,9")->capture_default_str();
    bench_cmd->add_option("--seed", c.seed, "generator and weight seed");
    bench_cmd->add_option("--monotone-trials", monotone_trials, "0 asserts monotonicity without sampling");
    bench_cmd->add_flag("--csv", csv, "comma-separated output");
    bench_cmd->add_flag("--timings", c.timings, "add timing columns");
    add_limits(bench_cmd);
    add_out(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*approx)
            return cmd_solve_approx(c, monotone_trials);
        if (*exact)
            return cmd_solve_exact(c);
        if (*elim)
            return cmd_eliminate(c);
        if (*cover)
            return cmd_cover(c, verify);
        if (*oracle)
            return cmd_oracle(c);
        if (*check) {
            SuiteResult r = run_suite(suite, max_n, std::cout);
            std::cout << (r.failures == 0 ? "PASS" : "FAIL") << " " << suite << ": " << r.cases - r.failures << "/"
                      << r.cases << "\n";
            return r.failures == 0 ? kOk : kInfeasible;
        }
        if (*bench_cmd)
            return cmd_bench(c, family, parse_sizes(sizes), csv, monotone_trials);
    } catch (const GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return kGuard;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const LogicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
