#include "fomax/bitset.hpp"

#include <cassert>
#include <sstream>

#include "fomax/simd/bitset_kernels.hpp"

namespace fomax {

Bitset::Bitset(std::size_t universe, std::initializer_list<Vertex> members) : Bitset(universe)
{
    for (Vertex v : members)
        set(v);
}

Bitset Bitset::full(std::size_t universe)
{
    Bitset b(universe);
    for (auto& w : b.words_)
        w = ~std::uint64_t{0};
    b.trim();
    return b;
}

Bitset Bitset::from_vector(std::size_t universe, std::span<const Vertex> members)
{
    Bitset b(universe);
    for (Vertex v : members)
        b.set(v);
    return b;
}

void Bitset::clear()
{
    for (auto& w : words_)
        w = 0;
}

void Bitset::trim()
{
    if (bits_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
}

std::size_t Bitset::count() const { return simd::active_kernels().popcount_words(words_.data(), words_.size()); }

bool Bitset::any() const
{
    for (auto w : words_)
        if (w != 0)
            return true;
    return false;
}

Bitset& Bitset::operator&=(const Bitset& other)
{
    assert(bits_ == other.bits_);
    simd::active_kernels().and_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

Bitset& Bitset::operator|=(const Bitset& other)
{
    assert(bits_ == other.bits_);
    simd::active_kernels().or_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

Bitset& Bitset::subtract(const Bitset& other)
{
    assert(bits_ == other.bits_);
    simd::active_kernels().andnot_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

Bitset Bitset::complement() const
{
    Bitset out = full(bits_);
    out.subtract(*this);
    return out;
}

std::size_t Bitset::intersection_count(const Bitset& other) const
{
    assert(bits_ == other.bits_);
    return simd::active_kernels().and_popcount_words(words_.data(), other.words_.data(), words_.size());
}

bool Bitset::is_subset_of(const Bitset& other) const
{
    assert(bits_ == other.bits_);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~other.words_[i]) != 0)
            return false;
    return true;
}

std::vector<Vertex> Bitset::members() const
{
    std::vector<Vertex> out;
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
}

std::string Bitset::to_string() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each([&](Vertex v) {
        if (!first)
            os << ',';
        os << v;
        first = false;
    });
    os << '}';
    return os.str();
}

}  // namespace fomax
