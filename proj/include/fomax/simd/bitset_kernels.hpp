#pragma once
// Word-level kernels over packed vertex bitsets.
//
// Every kernel has a portable scalar reference and, on x86-64 builds, an AVX2
// variant. The active table is chosen once at startup from CPUID; setting
// FOMAX_FORCE_SCALAR=1 in the environment pins the scalar table.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace fomax::simd {

struct KernelTable {
    std::string_view name;
    void (*and_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    void (*or_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    // dst = a & ~b
    void (*andnot_words)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    std::size_t (*popcount_words)(const std::uint64_t* a, std::size_t n);
    std::size_t (*and_popcount_words)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

const KernelTable& scalar_kernels();

// Null when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// The table used by Bitset; resolved once.
const KernelTable& active_kernels();

}  // namespace fomax::simd
