#include "fomax/simd/bitset_kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace fomax::simd {

const KernelTable* avx2_table_if_compiled();

const KernelTable* avx2_kernels()
{
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    if (!supported)
        return nullptr;
    return avx2_table_if_compiled();
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels()
{
    static const KernelTable& table = []() -> const KernelTable& {
        const char* force = std::getenv("FOMAX_FORCE_SCALAR");
        if (force != nullptr && std::string_view(force) == "1")
            return scalar_kernels();
        if (const KernelTable* fast = avx2_kernels())
            return *fast;
        return scalar_kernels();
    }();
    return table;
}

}  // namespace fomax::simd
