#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fomax/bitset.hpp"
#include "fomax/graph.hpp"

namespace fomax {

// Sorted, duplicate-free set-predicate indices.
using IndexSet = std::vector<int>;

// Membership pattern chi(v) as a bitmask over positions of an IndexSet.
using Pattern = unsigned;

class ITuple {
public:
    ITuple() = default;
    ITuple(IndexSet indices, std::size_t universe);

    const IndexSet& indices() const { return indices_; }
    std::size_t universe() const { return universe_; }
    // Position of `index` in indices(), or -1.
    int position(int index) const;
    bool has(int index) const { return position(index) >= 0; }

    const Bitset& set_at(int index) const;
    Bitset& set_at(int index);
    const Bitset& by_position(std::size_t p) const { return sets_[p]; }
    Bitset& by_position(std::size_t p) { return sets_[p]; }

    Pattern chi(Vertex v) const;
    void set_chi(Vertex v, Pattern mask);

    // Componentwise inclusion.
    bool is_subtuple_of(const ITuple& other) const;
    // Union of all members.
    Bitset support() const;

    // One line per index: "i: v1 v2 ...".
    std::string to_string() const;

    friend bool operator==(const ITuple&, const ITuple&) = default;

private:
    IndexSet indices_;
    std::size_t universe_ = 0;
    std::vector<Bitset> sets_;
};

// w(v, S) for S encoded as a Pattern over the positions of I.
class WeightAssignment {
public:
    WeightAssignment() = default;
    WeightAssignment(IndexSet indices, int n);

    const IndexSet& indices() const { return indices_; }
    int n() const { return n_; }
    std::int64_t get(Vertex v, Pattern s) const { return table_[slot(v, s)]; }
    // Throws InputError when s is empty and w is nonzero.
    void set(Vertex v, Pattern s, std::int64_t w);
    bool nonneg() const { return negatives_ == 0; }

    static WeightAssignment unit(IndexSet indices, int n);

private:
    std::size_t slot(Vertex v, Pattern s) const
    {
        return static_cast<std::size_t>(v) * (std::size_t{1} << indices_.size()) + s;
    }

    IndexSet indices_;
    int n_ = 0;
    std::vector<std::int64_t> table_;
    int negatives_ = 0;
};

// Lines "v {i,j,...} w"; '#' comments; omitted entries are 0.
WeightAssignment load_weights(std::string_view text, const Graph& g, const IndexSet& indices);

// Checked sum of w(v, chi(v)); throws InputError on overflow.
std::int64_t tuple_weight(const WeightAssignment& w, const ITuple& a);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

// Parse "1,2" / "{1,2}" style index lists.
IndexSet parse_index_set(std::string_view text);

}  // namespace fomax
