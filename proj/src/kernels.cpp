#include "pdeid/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace pdeid::kernels {

namespace {

const Kernels& select() {
    const char* env = std::getenv("PDEID_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return scalar();
    const Kernels* vec = avx2();
    if (env && std::strcmp(env, "avx2") == 0 && vec) return *vec;
    if (env && std::strcmp(env, "avx2") == 0 && !vec) return scalar();
    return vec ? *vec : scalar();
}

} // namespace

const Kernels& active() {
    static const Kernels& k = select();
    return k;
}

std::string active_name() { return active().name; }

} // namespace pdeid::kernels
