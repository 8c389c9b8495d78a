#include "fomax/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "fomax/errors.hpp"
#include "fomax/evaluator.hpp"
#include "fomax/locality.hpp"
#include "fomax/normal_form.hpp"
#include "fomax/parser.hpp"

namespace fomax {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Evaluating the original sentence is exponential in its quantifier depth.
constexpr int kNaiveVerifyMaxN = 12;

WeightAssignment localize_weights(const WeightAssignment& w, const Restricted& r)
{
    WeightAssignment out(w.indices(), r.graph.n());
    const Pattern top = Pattern{1} << w.indices().size();
    for (Vertex lv = 0; lv < r.graph.n(); ++lv)
        for (Pattern s = 1; s < top; ++s)
            out.set(lv, s, w.get(r.to_global[static_cast<std::size_t>(lv)], s));
    return out;
}

int default_depth_cap(int s, int n)
{
    const int bound = s >= 30 ? n : std::min(n, 1 << s);
    return std::max(1, bound);
}

Cover default_cover(const Graph& g, int s)
{
    Cover whole;
    whole.members.push_back(Bitset::full(static_cast<std::size_t>(g.n())));
    whole.s = s;
    whole.delta = {1, 1};
    whole.source = CoverSource::WholeGraph;
    if (g.n() == 0)
        return whole;
    auto coloring = treedepth_coloring(g, s, default_depth_cap(s, g.n()));
    try {
        return generic_cover_from_coloring(g, coloring, s);
    } catch (const GuardError&) {
        return whole;
    }
}

}  // namespace

std::string to_string(Monotonicity m)
{
    switch (m) {
    case Monotonicity::Asserted:
        return "asserted";
    case Monotonicity::SampledOk:
        return "sampled-ok";
    case Monotonicity::Violated:
        return "violated";
    }
    return "?";
}

bool meets_guarantee(std::int64_t value, const Rational& delta, std::int64_t opt)
{
    // value >= num/den * opt  <=>  value*den >= num*opt  (den > 0)
    return static_cast<__int128>(value) * delta.den >= static_cast<__int128>(delta.num) * opt;
}

SolveReport solve_approx(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi,
                         const std::optional<Cover>& cover, const ApproxOptions& opts)
{
    if (!w.nonneg())
        throw InputError("solve-approx needs nonnegative weights");
    if (w.n() != g.n())
        throw InputError("weight assignment does not match the graph");
    SolveReport rep;
    const auto n = static_cast<std::size_t>(g.n());

    auto t0 = Clock::now();
    if (opts.monotone_trials > 0) {
        auto verdict = check_monotone_sampled(g, phi, w.indices(), opts.monotone_trials, opts.seed);
        rep.monotonicity = verdict.counterexample_found ? Monotonicity::Violated : Monotonicity::SampledOk;
    }
    rep.timings.emplace_back("monotone", seconds_since(t0));

    t0 = Clock::now();
    Compiled c = eliminate_all(phi, g, opts.elim);
    Shroud h = dependency_shroud(g, c.sigma, c.interp);
    rep.shroud_size = std::max<std::size_t>(1, h.max_size());
    rep.timings.emplace_back("compile", seconds_since(t0));

    t0 = Clock::now();
    Cover cv;
    if (cover) {
        if (static_cast<std::size_t>(cover->s) < rep.shroud_size)
            throw CoverTooWeak("cover too weak: s=" + std::to_string(cover->s) + " but the shroud needs s >= " +
                               std::to_string(rep.shroud_size));
        for (const auto& m : cover->members)
            if (m.size() != n)
                throw InputError("cover member over the wrong vertex count");
        cv = *cover;
    } else {
        int s = opts.cover_s > 0 ? opts.cover_s : static_cast<int>(rep.shroud_size);
        if (static_cast<std::size_t>(s) < rep.shroud_size)
            throw CoverTooWeak("cover too weak: s=" + std::to_string(s) + " but the shroud needs s >= " +
                               std::to_string(rep.shroud_size));
        cv = default_cover(g, s);
    }
    if (cv.members.empty())
        throw InputError("empty cover");
    rep.delta = cv.delta;
    rep.source = cv.source;
    rep.cover_s = cv.s;
    rep.timings.emplace_back("cover", seconds_since(t0));

    t0 = Clock::now();
    ITuple empty(w.indices(), n);
    bool have = false;
    for (const Bitset& y : cv.members) {
        Bitset center = h_center(h, y);
        Solution sol;
        if (center.none()) {
            sol.feasible = evaluate_naive(g, c.sigma, c.interp, empty, c.phi);
            sol.tuple = empty;
        } else {
            Census cen = census(g, c.sigma, c.interp, empty, y.complement(), c.M, *c.phi);
            Restricted r = restrict_to_subgraph(g, c.interp, c.sigma, c.phi, y, cen);
            TreeDecomposition td = separator_decomposition(r.graph);
            Solution loc = dp_optimize(r.graph, td, r.localize_set(center), localize_weights(w, r), r.sigma, r.phi,
                                       r.interp, opts.dp);
            sol.feasible = loc.feasible;
            if (loc.feasible) {
                sol.tuple = r.globalize_tuple(loc.tuple, n);
                sol.value = loc.value;
            }
        }
        if (!sol.feasible) {
            rep.element_values.emplace_back(std::nullopt);
            continue;
        }
        sol.value = tuple_weight(w, sol.tuple);
        rep.element_values.emplace_back(sol.value);
        if (!have || sol.value > rep.solution.value ||
            (sol.value == rep.solution.value && tuple_less(sol.tuple, rep.solution.tuple))) {
            rep.solution = sol;
            have = true;
        }
    }
    rep.timings.emplace_back("solve", seconds_since(t0));

    t0 = Clock::now();
    if (have) {
        bool ok = g.n() <= kNaiveVerifyMaxN ? evaluate_naive(g, rep.solution.tuple, phi)
                                            : evaluate_naive(g, c.sigma, c.interp, rep.solution.tuple, c.phi);
        if (!ok)
            throw LogicError("solve-approx produced a tuple that violates the sentence");
    }
    rep.timings.emplace_back("verify", seconds_since(t0));
    return rep;
}

std::string format_report(const SolveReport& r, bool timings)
{
    std::ostringstream out;
    out << dump_solution(r.solution, "approx");
    out << "delta=" << r.delta.to_string() << "\n";
    out << "cover=" << to_string(r.source) << " s=" << r.cover_s << " members=" << r.element_values.size() << "\n";
    out << "shroud=" << r.shroud_size << "\n";
    out << "monotonicity=" << to_string(r.monotonicity) << "\n";
    for (std::size_t i = 0; i < r.element_values.size(); ++i) {
        out << "element " << i << ": ";
        if (r.element_values[i])
            out << *r.element_values[i];
        else
            out << "infeasible";
        out << "\n";
    }
    if (timings)
        for (const auto& [stage, secs] : r.timings) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", secs);
            out << "time " << stage << "=" << buf << "\n";
        }
    return out.str();
}

Family parse_family(const std::string& name)
{
    if (name == "path")
        return Family::Path;
    if (name == "cycle")
        return Family::Cycle;
    if (name == "grid")
        return Family::Grid;
    if (name == "random-planarish")
        return Family::RandomPlanarish;
    if (name == "bounded-degree-random")
        return Family::BoundedDegreeRandom;
    throw InputError("unknown family: " + name);
}

std::string to_string(Family f)
{
    switch (f) {
    case Family::Path:
        return "path";
    case Family::Cycle:
        return "cycle";
    case Family::Grid:
        return "grid";
    case Family::RandomPlanarish:
        return "random-planarish";
    case Family::BoundedDegreeRandom:
        return "bounded-degree-random";
    }
    return "?";
}

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt)
{
    return seed ^ (salt * 0x9E3779B97F4A7C15ULL);
}

// Partial grid: vertex i sits at row i / width, column i % width.
std::vector<std::pair<Vertex, Vertex>> grid_edges(int n, int width)
{
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int i = 0; i < n; ++i) {
        if ((i + 1) % width != 0 && i + 1 < n)
            e.emplace_back(i, i + 1);
        if (i + width < n)
            e.emplace_back(i, i + width);
    }
    return e;
}

int grid_width(int n)
{
    return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))));
}

}  // namespace

Graph generate(Family f, int n, std::uint64_t seed)
{
    if (n < 0)
        throw InputError("negative graph size");
    std::mt19937_64 rng(mix(seed, static_cast<std::uint64_t>(n) + 1));
    std::vector<std::pair<Vertex, Vertex>> e;
    switch (f) {
    case Family::Path:
        for (int i = 0; i + 1 < n; ++i)
            e.emplace_back(i, i + 1);
        break;
    case Family::Cycle:
        for (int i = 0; i + 1 < n; ++i)
            e.emplace_back(i, i + 1);
        if (n >= 3)
            e.emplace_back(n - 1, 0);
        break;
    case Family::Grid:
        e = grid_edges(n, grid_width(n));
        break;
    case Family::RandomPlanarish: {
        // Grid plus one diagonal in some cells, then random deletions.
        const int width = grid_width(n);
        auto base = grid_edges(n, width);
        for (int i = 0; i + width + 1 < n; ++i) {
            if ((i + 1) % width == 0 || rng() % 2 == 0)
                continue;
            if (rng() % 2 == 0)
                base.emplace_back(i, i + width + 1);
            else
                base.emplace_back(i + 1, i + width);
        }
        for (auto ed : base)
            if (rng() % 100 >= 15)
                e.push_back(ed);
        break;
    }
    case Family::BoundedDegreeRandom: {
        constexpr int kMaxDegree = 3;
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
        for (int attempt = 0; n >= 2 && attempt < 2 * n; ++attempt) {
            auto u = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
            auto v = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
            auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
            if (u == v || adj[su][sv] || deg[su] >= kMaxDegree || deg[sv] >= kMaxDegree)
                continue;
            adj[su][sv] = adj[sv][su] = true;
            ++deg[su];
            ++deg[sv];
            e.emplace_back(std::min(u, v), std::max(u, v));
        }
        break;
    }
    }
    return Graph(n, e);
}

WeightAssignment bench_weights(const Graph& g, const IndexSet& indices, std::uint64_t seed)
{
    std::mt19937_64 rng(mix(seed, 0xB0B0ULL + static_cast<std::uint64_t>(g.n())));
    WeightAssignment w(indices, g.n());
    const Pattern top = Pattern{1} << indices.size();
    for (Vertex v = 0; v < g.n(); ++v)
        for (Pattern s = 1; s < top; ++s)
            w.set(v, s, 1 + static_cast<std::int64_t>(rng() % 5));
    return w;
}

std::vector<BenchRow> bench(Family f, const std::vector<int>& sizes, const FormulaPtr& phi, std::uint64_t seed,
                            const BenchOptions& opts)
{
    IndexSet indices = indices_used(*phi);
    std::vector<BenchRow> rows;
    for (int n : sizes) {
        Graph g = generate(f, n, seed);
        WeightAssignment w = bench_weights(g, indices, seed);
        BenchRow row;
        row.n = n;
        row.m = static_cast<std::size_t>(g.m());
        ApproxOptions ao = opts.approx;
        ao.seed = seed;
        auto t0 = Clock::now();
        SolveReport rep = solve_approx(g, w, phi, std::nullopt, ao);
        row.timings = rep.timings;
        row.timings.emplace_back("approx-total", seconds_since(t0));
        row.approx = rep.solution.value;
        row.delta = rep.delta;
        if (static_cast<std::size_t>(n) * indices.size() <= opts.brute_force_cap) {
            t0 = Clock::now();
            Solution best = brute_force(g, w, phi, Bitset::full(static_cast<std::size_t>(n)), opts.brute_force_cap);
            row.timings.emplace_back("brute-force", seconds_since(t0));
            row.opt = best.feasible ? best.value : 0;
            row.guarantee_ok = meets_guarantee(row.approx, row.delta, *row.opt);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

const char* const kMissing = "—";

std::vector<std::vector<std::string>> bench_cells(const std::vector<BenchRow>& rows, bool timings)
{
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> header = {"n", "m", "opt", "approx", "delta", "ratio", "guarantee"};
    if (timings && !rows.empty())
        for (const auto& [stage, secs] : rows.front().timings)
            header.push_back("t_" + stage);
    out.push_back(header);
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        cells.push_back(std::to_string(r.n));
        cells.push_back(std::to_string(r.m));
        cells.push_back(r.opt ? std::to_string(*r.opt) : kMissing);
        cells.push_back(std::to_string(r.approx));
        cells.push_back(r.delta.to_string());
        if (!r.opt) {
            cells.push_back(kMissing);
            cells.push_back(kMissing);
        } else {
            char buf[32];
            if (*r.opt == 0)
                std::snprintf(buf, sizeof buf, "1.000");
            else
                std::snprintf(buf, sizeof buf, "%.3f", static_cast<double>(r.approx) / static_cast<double>(*r.opt));
            cells.push_back(buf);
            cells.push_back(r.guarantee_ok ? "ok" : "FAIL");
        }
        if (timings)
            for (std::size_t i = 7; i < header.size(); ++i) {
                const std::string stage = header[i].substr(2);
                auto it = std::find_if(r.timings.begin(), r.timings.end(),
                                       [&](const auto& p) { return p.first == stage; });
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.4f", it == r.timings.end() ? 0.0 : it->second);
                cells.push_back(it == r.timings.end() ? kMissing : buf);
            }
        out.push_back(std::move(cells));
    }
    return out;
}

// Display width, counting each UTF-8 code point once.
std::size_t display_width(const std::string& s)
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) {
        return (static_cast<unsigned char>(ch) & 0xC0) != 0x80;
    }));
}

}  // namespace

std::string format_bench_text(const std::vector<BenchRow>& rows, bool timings)
{
    auto cells = bench_cells(rows, timings);
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& line : cells)
        for (std::size_t i = 0; i < line.size(); ++i)
            width[i] = std::max(width[i], display_width(line[i]));
    std::string out;
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i)
                out += "  ";
            out += std::string(width[i] - display_width(line[i]), ' ') + line[i];
        }
        out += "\n";
    }
    return out;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows, bool timings)
{
    std::string out;
    for (const auto& line : bench_cells(rows, timings)) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i)
                out += ",";
            out += line[i];
        }
        out += "\n";
    }
    return out;
}

}  // namespace fomax
