#include "doctest.h"

#include <bit>
#include <random>
#include <vector>

#include "fomax/bitset.hpp"
#include "fomax/simd/bitset_kernels.hpp"

using namespace fomax;
using fomax::simd::KernelTable;

namespace {

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) {
        switch (rng() % 4) {
        case 0:
            x = 0;
            break;
        case 1:
            x = ~std::uint64_t{0};
            break;
        default:
            x = rng();
        }
    }
    return w;
}

void compare_tables(const KernelTable& ref, const KernelTable& other)
{
    std::mt19937_64 rng(123);
    // Lengths straddle the 4-word vector width and its tail handling.
    for (std::size_t n = 0; n <= 37; ++n)
        for (int round = 0; round < 20; ++round) {
            auto a = random_words(rng, n), b = random_words(rng, n);
            std::vector<std::uint64_t> d1(n), d2(n);
            ref.and_words(d1.data(), a.data(), b.data(), n);
            other.and_words(d2.data(), a.data(), b.data(), n);
            CHECK(d1 == d2);
            ref.or_words(d1.data(), a.data(), b.data(), n);
            other.or_words(d2.data(), a.data(), b.data(), n);
            CHECK(d1 == d2);
            ref.andnot_words(d1.data(), a.data(), b.data(), n);
            other.andnot_words(d2.data(), a.data(), b.data(), n);
            CHECK(d1 == d2);
            CHECK(ref.popcount_words(a.data(), n) == other.popcount_words(a.data(), n));
            CHECK(ref.and_popcount_words(a.data(), b.data(), n) == other.and_popcount_words(a.data(), b.data(), n));
            // In-place use (dst aliases a).
            auto a1 = a, a2 = a;
            ref.and_words(a1.data(), a1.data(), b.data(), n);
            other.and_words(a2.data(), a2.data(), b.data(), n);
            CHECK(a1 == a2);
        }
}

}  // namespace

TEST_CASE("scalar kernels match word-by-word definitions")
{
    const KernelTable& s = simd::scalar_kernels();
    std::mt19937_64 rng(9);
    for (std::size_t n = 0; n <= 9; ++n) {
        auto a = random_words(rng, n), b = random_words(rng, n);
        std::vector<std::uint64_t> d(n);
        s.andnot_words(d.data(), a.data(), b.data(), n);
        std::size_t pc = 0, apc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(d[i] == (a[i] & ~b[i]));
            pc += static_cast<std::size_t>(std::popcount(a[i]));
            apc += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
        }
        CHECK(s.popcount_words(a.data(), n) == pc);
        CHECK(s.and_popcount_words(a.data(), b.data(), n) == apc);
    }
}

TEST_CASE("AVX2 kernels are equivalent to the scalar reference")
{
    const KernelTable* fast = simd::avx2_kernels();
    if (fast == nullptr) {
        MESSAGE("AVX2 unavailable on this machine; equivalence not exercised");
        return;
    }
    compare_tables(simd::scalar_kernels(), *fast);
}

TEST_CASE("Bitset operations agree with std::vector<bool>")
{
    std::mt19937_64 rng(55);
    for (std::size_t universe : {0u, 1u, 63u, 64u, 65u, 200u, 513u}) {
        Bitset a(universe), b(universe);
        std::vector<bool> va(universe), vb(universe);
        for (std::size_t i = 0; i < universe; ++i) {
            va[i] = rng() % 2;
            vb[i] = rng() % 3 == 0;
            a.assign(static_cast<Vertex>(i), va[i]);
            b.assign(static_cast<Vertex>(i), vb[i]);
        }
        Bitset x = a, y = a, z = a;
        x &= b;
        y |= b;
        z.subtract(b);
        Bitset c = a.complement();
        std::size_t count = 0, inter = 0;
        bool subset = true;
        for (std::size_t i = 0; i < universe; ++i) {
            auto v = static_cast<Vertex>(i);
            CHECK(x.test(v) == (va[i] && vb[i]));
            CHECK(y.test(v) == (va[i] || vb[i]));
            CHECK(z.test(v) == (va[i] && !vb[i]));
            CHECK(c.test(v) == !va[i]);
            count += va[i];
            inter += va[i] && vb[i];
            subset = subset && (!va[i] || vb[i]);
        }
        CHECK(a.count() == count);
        CHECK(a.intersection_count(b) == inter);
        CHECK(a.is_subset_of(b) == subset);
        CHECK(c.count() == universe - count);
    }
}
