#include "cppsfs/kernels.hpp"

namespace cppsfs::kernels {

const Ops& active() {
#if CPPSFS_HAVE_AVX2 && (defined(__x86_64__) || defined(_M_X64))
    static const Ops& ops = avx2_available() ? avx2() : scalar();
#else
    static const Ops& ops = scalar();
#endif
    return ops;
}

} // namespace cppsfs::kernels
