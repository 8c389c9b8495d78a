#pragma once
// The approximation driver over covers and the benchmark harness.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fomax/covers.hpp"
#include "fomax/dp.hpp"
#include "fomax/errors.hpp"
#include "fomax/formula.hpp"
#include "fomax/graph.hpp"
#include "fomax/qelim.hpp"
#include "fomax/tuple.hpp"

namespace fomax {

enum class Monotonicity { Asserted, SampledOk, Violated };
std::string to_string(Monotonicity m);

struct ApproxOptions {
    ElimOptions elim;
    DpOptions dp;
    // Sampled monotonicity trials; 0 means the caller asserts monotonicity.
    int monotone_trials = 64;
    std::uint64_t seed = 1;
    // s for the default colouring cover; 0 means the shroud size.
    int cover_s = 0;
};

struct SolveReport {
    Solution solution;
    Rational delta{1, 1};
    CoverSource source = CoverSource::WholeGraph;
    int cover_s = 0;
    std::size_t shroud_size = 0;  // max |h(v)|, the s the cover must reach
    std::vector<std::optional<std::int64_t>> element_values;
    Monotonicity monotonicity = Monotonicity::Asserted;
    std::vector<std::pair<std::string, double>> timings;  // stage, seconds
};

// Thrown when a supplied cover's s is below the shroud size.
class CoverTooWeak : public InputError {
public:
    using InputError::InputError;
};

// Best tuple over the h-centres of the cover members, each solved exactly on
// the induced subgraph. With no cover, colours a treedepth colouring for
// s = max |h(v)| (whole graph when that needs more than 20 colours).
SolveReport solve_approx(const Graph& g, const WeightAssignment& w, const FormulaPtr& phi,
                         const std::optional<Cover>& cover, const ApproxOptions& opts = {});

// value >= delta * opt, exactly.
bool meets_guarantee(std::int64_t value, const Rational& delta, std::int64_t opt);

// Report text: solution dump plus guarantee, cover and per-element lines.
std::string format_report(const SolveReport& r, bool timings);

enum class Family { Path, Cycle, Grid, RandomPlanarish, BoundedDegreeRandom };
Family parse_family(const std::string& name);
std::string to_string(Family f);

// Deterministic in (family, n, seed).
Graph generate(Family f, int n, std::uint64_t seed);

struct BenchRow {
    int n = 0;
    std::size_t m = 0;
    std::optional<std::int64_t> opt;
    std::int64_t approx = 0;
    Rational delta{1, 1};
    bool guarantee_ok = true;  // vacuous without opt
    std::vector<std::pair<std::string, double>> timings;
};

struct BenchOptions {
    ApproxOptions approx;
    std::size_t brute_force_cap = 16;
    bool timings = false;
};

// Weights w(v, S) drawn uniformly from 1..5 for nonempty S.
WeightAssignment bench_weights(const Graph& g, const IndexSet& indices, std::uint64_t seed);

std::vector<BenchRow> bench(Family f, const std::vector<int>& sizes, const FormulaPtr& phi, std::uint64_t seed,
                            const BenchOptions& opts = {});
std::string format_bench_text(const std::vector<BenchRow>& rows, bool timings);
std::string format_bench_csv(const std::vector<BenchRow>& rows, bool timings);

}  // namespace fomax
