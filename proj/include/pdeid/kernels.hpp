#pragma once

#include <string>
#include <utility>

namespace pdeid::kernels {

// Data-parallel inner loops used by the solver and the motion extractor.
// Scalar versions are the reference; the AVX2 versions perform the same
// IEEE operations per element in the same order, so results are required
// to be bit-identical (see tests/test_kernels.cpp).

/// One explicit sub-step of d*u_t = c*lap(u) - B.grad(u) over the interior.
/// rd = c*dt/h^2; rxp/rxm = max/min(bx*dt/h, 0); ryp/rym likewise for by.
/// Boundary rows/cols of `out` are left untouched.
using StencilStepFn = void (*)(const double* u, double* out, int ny, int nx, double rd,
                               double rxp, double rxm, double ryp, double rym);

/// One leapfrog sub-step of u_tt + d*u_t = c*lap(u) - B.grad(u):
///   out = (2u - (1-a)*uprev + rd2*lap - upwind) / (1+a),  a = d*dt/2.
/// rd2 = c*dt^2/h^2; rxp2/rxm2/ryp2/rym2 are the signed-split b*dt^2/h terms.
using WaveStepFn = void (*)(const double* u, const double* uprev, double* out, int ny, int nx,
                            double rd2, double rxp2, double rxm2, double ryp2, double rym2,
                            double omb, double inv1pa);

/// Block matching between two frames: for every interior point pick the
/// nonzero 3x3 offset minimizing |next(i+k,j+l) - prev(i,j)|, ties broken by
/// smaller k^2+l^2 then lexicographic (k,l). Accumulates the chosen offsets;
/// sum_dx collects l (x) and sum_dy collects k (y). Offset sums are exact in
/// double so the result does not depend on accumulation order.
using BlockMatchFn = void (*)(const double* prev, const double* next, int ny, int nx,
                              double* sum_dx, double* sum_dy);

/// Min and max of a buffer (exact, order-independent).
using MinMaxFn = void (*)(const double* data, size_t n, double* mn, double* mx);

struct Kernels {
    StencilStepFn stencil_step = nullptr;
    WaveStepFn wave_step = nullptr;
    BlockMatchFn block_match = nullptr;
    MinMaxFn min_max = nullptr;
    const char* name = "";
};

const Kernels& scalar();

/// AVX2 variants, or nullptr when unsupported by the build or the CPU.
const Kernels* avx2();

/// Active set: AVX2 when available, overridable via PDEID_SIMD=scalar|avx2.
const Kernels& active();

/// Name of the active set ("scalar" or "avx2").
std::string active_name();

} // namespace pdeid::kernels
