#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fomax {

using Vertex = int;

// Fixed-universe dynamic bitset over vertex ids 0..size()-1.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t universe) : bits_(universe), words_((universe + 63) / 64, 0) {}
    Bitset(std::size_t universe, std::initializer_list<Vertex> members);

    static Bitset full(std::size_t universe);
    static Bitset from_vector(std::size_t universe, std::span<const Vertex> members);

    std::size_t size() const { return bits_; }

    bool test(Vertex v) const { return (words_[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u; }
    void set(Vertex v) { words_[static_cast<std::size_t>(v) >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(Vertex v) { words_[static_cast<std::size_t>(v) >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    void assign(Vertex v, bool on) { on ? set(v) : reset(v); }
    void clear();

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& other);
    Bitset& operator|=(const Bitset& other);
    // this & ~other
    Bitset& subtract(const Bitset& other);
    Bitset complement() const;

    std::size_t intersection_count(const Bitset& other) const;
    bool is_subset_of(const Bitset& other) const;

    std::vector<Vertex> members() const;
    // "{0,2,5}"
    std::string to_string() const;

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const Bitset& a, const Bitset& b) = default;
    friend auto operator<=>(const Bitset& a, const Bitset& b) = default;

    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                int bit = __builtin_ctzll(word);
                fn(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit)));
                word &= word - 1;
            }
        }
    }

private:
    void trim();

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

inline Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
inline Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

}  // namespace fomax
