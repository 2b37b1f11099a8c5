#include "kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace bo::kernels {

#ifndef BO_HAVE_AVX2
const Ops* avx2_ops() { return nullptr; }
#endif

namespace {

const Ops* pick()
{
    const Ops* choice = &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    if (const Ops* v = avx2_ops(); v && __builtin_cpu_supports("avx2"))
        choice = v;
#endif
    if (const char* env = std::getenv("BO_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0)
            choice = &scalar_ops();
        else if (std::strcmp(env, "avx2") == 0) {
            if (const Ops* v = avx2_ops())
                choice = v;
        }
    }
    return choice;
}

} // namespace

const Ops& ops()
{
    static const Ops* chosen = pick();
    return *chosen;
}

} // namespace bo::kernels
