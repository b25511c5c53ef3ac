#include "qlbit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qlbit/errors.hpp"

namespace qlbit::kernels {

namespace {

const Ops* pick_auto() {
    if (const char* env = std::getenv("QLBIT_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && avx2_ops()) return avx2_ops();
        // Unknown or unavailable request in the environment: fall through.
    }
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

} // namespace

const Ops& ops() {
    const Ops* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = pick_auto();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void select(const char* name) {
    if (!name) {
        g_active.store(pick_auto(), std::memory_order_release);
        return;
    }
    if (std::strcmp(name, "scalar") == 0) {
        g_active.store(&scalar_ops(), std::memory_order_release);
        return;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (const Ops* v = avx2_ops()) {
            g_active.store(v, std::memory_order_release);
            return;
        }
        throw Error(ErrorCode::InvalidArgument, "avx2 kernels unavailable on this machine");
    }
    throw Error(ErrorCode::InvalidArgument, std::string("unknown kernel backend '") + name + "'");
}

} // namespace qlbit::kernels
