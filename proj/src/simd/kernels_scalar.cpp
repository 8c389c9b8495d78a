#include "fomax/simd/bitset_kernels.hpp"

#include <bit>

namespace fomax::simd {
namespace {

void and_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] & b[i];
}

void or_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] | b[i];
}

void andnot_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = a[i] & ~b[i];
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t n)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

std::size_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

}  // namespace

const KernelTable& scalar_kernels()
{
    static const KernelTable table{"scalar", and_scalar, or_scalar, andnot_scalar, popcount_scalar,
                                   and_popcount_scalar};
    return table;
}

}  // namespace fomax::simd
