#include "fomax/tuple.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

#include "fomax/errors.hpp"

namespace fomax {

ITuple::ITuple(IndexSet indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe), sets_(indices_.size(), Bitset(universe))
{
}

int ITuple::position(int index) const
{
    auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
    if (it == indices_.end() || *it != index)
        return -1;
    return static_cast<int>(it - indices_.begin());
}

const Bitset& ITuple::set_at(int index) const
{
    int p = position(index);
    if (p < 0)
        throw LogicError("index " + std::to_string(index) + " not in tuple");
    return sets_[static_cast<std::size_t>(p)];
}

Bitset& ITuple::set_at(int index)
{
    int p = position(index);
    if (p < 0)
        throw LogicError("index " + std::to_string(index) + " not in tuple");
    return sets_[static_cast<std::size_t>(p)];
}

Pattern ITuple::chi(Vertex v) const
{
    Pattern m = 0;
    for (std::size_t p = 0; p < sets_.size(); ++p)
        if (sets_[p].test(v))
            m |= Pattern{1} << p;
    return m;
}

void ITuple::set_chi(Vertex v, Pattern mask)
{
    for (std::size_t p = 0; p < sets_.size(); ++p)
        sets_[p].assign(v, (mask >> p) & 1u);
}

bool ITuple::is_subtuple_of(const ITuple& other) const
{
    for (std::size_t p = 0; p < sets_.size(); ++p)
        if (!sets_[p].is_subset_of(other.sets_[p]))
            return false;
    return true;
}

Bitset ITuple::support() const
{
    Bitset out(universe_);
    for (const auto& s : sets_)
        out |= s;
    return out;
}

std::string ITuple::to_string() const
{
    std::string out;
    for (std::size_t p = 0; p < sets_.size(); ++p) {
        out += std::to_string(indices_[p]) + ":";
        sets_[p].for_each([&](Vertex v) { out += " " + std::to_string(v); });
        out += "\n";
    }
    return out;
}

WeightAssignment::WeightAssignment(IndexSet indices, int n)
    : indices_(std::move(indices)), n_(n), table_(static_cast<std::size_t>(n) << indices_.size(), 0)
{
}

void WeightAssignment::set(Vertex v, Pattern s, std::int64_t w)
{
    if (s == 0 && w != 0)
        throw InputError("weight of the empty index set must be 0");
    auto& slot_ref = table_[slot(v, s)];
    negatives_ += (w < 0) - (slot_ref < 0);
    slot_ref = w;
}

WeightAssignment WeightAssignment::unit(IndexSet indices, int n)
{
    WeightAssignment w(std::move(indices), n);
    for (Vertex v = 0; v < n; ++v)
        for (Pattern s = 1; s < (Pattern{1} << w.indices().size()); ++s)
            w.set(v, s, static_cast<std::int64_t>(std::popcount(s)));
    return w;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw InputError("weight sum overflows 64-bit integer");
    return r;
}

IndexSet parse_index_set(std::string_view text)
{
    std::string s(text);
    for (char& c : s)
        if (c == '{' || c == '}' || c == ',')
            c = ' ';
    std::istringstream in(s);
    IndexSet out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw InputError("bad index '" + tok + "'");
        }
        if (used != tok.size() || v < 0)
            throw InputError("bad index '" + tok + "'");
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

WeightAssignment load_weights(std::string_view text, const Graph& g, const IndexSet& indices)
{
    WeightAssignment w(indices, g.n());
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto err = [&](const std::string& what) {
            throw InputError("weights line " + std::to_string(lineno) + ": " + what);
        };
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.resize(pos);
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }))
            continue;
        auto open = line.find('{');
        auto close = line.find('}');
        if (open == std::string::npos || close == std::string::npos || close < open)
            err("expected 'v {i,...} w'");
        std::istringstream head(line.substr(0, open));
        std::istringstream tail(line.substr(close + 1));
        long long v = 0;
        long long value = 0;
        std::string extra;
        if (!(head >> v) || (head >> extra))
            err("bad vertex");
        if (!(tail >> value) || (tail >> extra))
            err("bad weight");
        if (v < 0 || v >= g.n())
            err("vertex out of range");
        IndexSet s;
        try {
            s = parse_index_set(line.substr(open + 1, close - open - 1));
        } catch (const InputError& e) {
            err(e.what());
        }
        Pattern mask = 0;
        for (int i : s) {
            auto it = std::lower_bound(indices.begin(), indices.end(), i);
            if (it == indices.end() || *it != i)
                err("unknown index " + std::to_string(i));
            mask |= Pattern{1} << (it - indices.begin());
        }
        if (mask == 0 && value != 0)
            err("weight of the empty index set must be 0");
        w.set(static_cast<Vertex>(v), mask, value);
    }
    return w;
}

std::int64_t tuple_weight(const WeightAssignment& w, const ITuple& a)
{
    std::int64_t total = 0;
    for (Vertex v = 0; v < w.n(); ++v) {
        Pattern s = a.chi(v);
        if (s != 0)
            total = checked_add(total, w.get(v, s));
    }
    return total;
}

}  // namespace fomax
