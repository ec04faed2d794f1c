#include "pdeid/kernels.hpp"

#include "kernels_detail.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// AVX2 variants of the scalar kernels. No FMA is used and every per-element
// expression mirrors kernels_detail.hpp exactly, so outputs are bit-identical
// to the scalar reference; tests assert this.

namespace pdeid::kernels {

namespace {

using namespace detail;

__attribute__((target("avx2"))) inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

__attribute__((target("avx2"))) void stencil_step_avx2(const double* u, double* out, int ny,
                                                       int nx, double rd, double rxp, double rxm,
                                                       double ryp, double rym) {
    const __m256d vrd = _mm256_set1_pd(rd);
    const __m256d vrxp = _mm256_set1_pd(rxp);
    const __m256d vrxm = _mm256_set1_pd(rxm);
    const __m256d vryp = _mm256_set1_pd(ryp);
    const __m256d vrym = _mm256_set1_pd(rym);
    const __m256d four = _mm256_set1_pd(4.0);
    const int xend = nx - 1;
    for (int y = 1; y < ny - 1; ++y) {
        const double* row = u + static_cast<size_t>(y) * nx;
        const double* rowS = row - nx;
        const double* rowN = row + nx;
        double* orow = out + static_cast<size_t>(y) * nx;
        int x = 1;
        for (; x + 4 <= xend; x += 4) {
            const __m256d c = _mm256_loadu_pd(row + x);
            const __m256d w = _mm256_loadu_pd(row + x - 1);
            const __m256d e = _mm256_loadu_pd(row + x + 1);
            const __m256d s = _mm256_loadu_pd(rowS + x);
            const __m256d n = _mm256_loadu_pd(rowN + x);
            const __m256d lap = _mm256_sub_pd(
                _mm256_add_pd(_mm256_add_pd(e, w), _mm256_add_pd(n, s)), _mm256_mul_pd(four, c));
            const __m256d conv_x =
                _mm256_add_pd(_mm256_mul_pd(vrxp, _mm256_sub_pd(c, w)),
                              _mm256_mul_pd(vrxm, _mm256_sub_pd(e, c)));
            const __m256d conv_y =
                _mm256_add_pd(_mm256_mul_pd(vryp, _mm256_sub_pd(c, s)),
                              _mm256_mul_pd(vrym, _mm256_sub_pd(n, c)));
            const __m256d r = _mm256_sub_pd(
                _mm256_sub_pd(_mm256_add_pd(c, _mm256_mul_pd(vrd, lap)), conv_x), conv_y);
            _mm256_storeu_pd(orow + x, r);
        }
        for (; x < xend; ++x) {
            orow[x] = stencil_point(row[x], row[x - 1], row[x + 1], rowS[x], rowN[x], rd, rxp,
                                    rxm, ryp, rym);
        }
    }
}

__attribute__((target("avx2"))) void wave_step_avx2(const double* u, const double* uprev,
                                                    double* out, int ny, int nx, double rd2,
                                                    double rxp2, double rxm2, double ryp2,
                                                    double rym2, double omb, double inv1pa) {
    const __m256d vrd = _mm256_set1_pd(rd2);
    const __m256d vrxp = _mm256_set1_pd(rxp2);
    const __m256d vrxm = _mm256_set1_pd(rxm2);
    const __m256d vryp = _mm256_set1_pd(ryp2);
    const __m256d vrym = _mm256_set1_pd(rym2);
    const __m256d vomb = _mm256_set1_pd(omb);
    const __m256d vinv = _mm256_set1_pd(inv1pa);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const int xend = nx - 1;
    for (int y = 1; y < ny - 1; ++y) {
        const size_t off = static_cast<size_t>(y) * nx;
        const double* row = u + off;
        const double* rowS = row - nx;
        const double* rowN = row + nx;
        const double* prow = uprev + off;
        double* orow = out + off;
        int x = 1;
        for (; x + 4 <= xend; x += 4) {
            const __m256d c = _mm256_loadu_pd(row + x);
            const __m256d p = _mm256_loadu_pd(prow + x);
            const __m256d w = _mm256_loadu_pd(row + x - 1);
            const __m256d e = _mm256_loadu_pd(row + x + 1);
            const __m256d s = _mm256_loadu_pd(rowS + x);
            const __m256d n = _mm256_loadu_pd(rowN + x);
            const __m256d lap = _mm256_sub_pd(
                _mm256_add_pd(_mm256_add_pd(e, w), _mm256_add_pd(n, s)), _mm256_mul_pd(four, c));
            const __m256d conv_x =
                _mm256_add_pd(_mm256_mul_pd(vrxp, _mm256_sub_pd(c, w)),
                              _mm256_mul_pd(vrxm, _mm256_sub_pd(e, c)));
            const __m256d conv_y =
                _mm256_add_pd(_mm256_mul_pd(vryp, _mm256_sub_pd(c, s)),
                              _mm256_mul_pd(vrym, _mm256_sub_pd(n, c)));
            const __m256d lead = _mm256_sub_pd(_mm256_mul_pd(two, c), _mm256_mul_pd(vomb, p));
            const __m256d acc = _mm256_sub_pd(
                _mm256_sub_pd(_mm256_add_pd(lead, _mm256_mul_pd(vrd, lap)), conv_x), conv_y);
            _mm256_storeu_pd(orow + x, _mm256_mul_pd(vinv, acc));
        }
        for (; x < xend; ++x) {
            orow[x] = wave_point(row[x], prow[x], row[x - 1], row[x + 1], rowS[x], rowN[x], rd2,
                                 rxp2, rxm2, ryp2, rym2, omb, inv1pa);
        }
    }
}

__attribute__((target("avx2"))) void block_match_avx2(const double* prev, const double* next,
                                                      int ny, int nx, double* sum_dx,
                                                      double* sum_dy) {
    __m256d acc_dx = _mm256_setzero_pd();
    __m256d acc_dy = _mm256_setzero_pd();
    long long tail_sx = 0;
    long long tail_sy = 0;
    const int xend = nx - 1;
    for (int y = 1; y < ny - 1; ++y) {
        const double* prow = prev + static_cast<size_t>(y) * nx;
        int x = 1;
        for (; x + 4 <= xend; x += 4) {
            const __m256d ref = _mm256_loadu_pd(prow + x);
            __m256d best = abs_pd(_mm256_sub_pd(
                _mm256_loadu_pd(next + (static_cast<size_t>(y) + kOffY[0]) * nx + x + kOffX[0]),
                ref));
            __m256d bdx = _mm256_set1_pd(static_cast<double>(kOffX[0]));
            __m256d bdy = _mm256_set1_pd(static_cast<double>(kOffY[0]));
            for (int o = 1; o < 8; ++o) {
                const __m256d err = abs_pd(_mm256_sub_pd(
                    _mm256_loadu_pd(next + (static_cast<size_t>(y) + kOffY[o]) * nx + x +
                                    kOffX[o]),
                    ref));
                const __m256d lt = _mm256_cmp_pd(err, best, _CMP_LT_OQ);
                best = _mm256_blendv_pd(best, err, lt);
                bdx = _mm256_blendv_pd(bdx, _mm256_set1_pd(static_cast<double>(kOffX[o])), lt);
                bdy = _mm256_blendv_pd(bdy, _mm256_set1_pd(static_cast<double>(kOffY[o])), lt);
            }
            acc_dx = _mm256_add_pd(acc_dx, bdx);
            acc_dy = _mm256_add_pd(acc_dy, bdy);
        }
        for (; x < xend; ++x) {
            const int pick = block_match_point(next, nx, y, x, prow[x]);
            tail_sx += kOffX[pick];
            tail_sy += kOffY[pick];
        }
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc_dx);
    *sum_dx = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + static_cast<double>(tail_sx);
    _mm256_store_pd(lanes, acc_dy);
    *sum_dy = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + static_cast<double>(tail_sy);
}

__attribute__((target("avx2"))) void min_max_avx2(const double* data, size_t n, double* mn,
                                                  double* mx) {
    double lo;
    double hi;
    size_t i = 0;
    if (n >= 4) {
        __m256d vlo = _mm256_loadu_pd(data);
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= n; i += 4) {
            const __m256d v = _mm256_loadu_pd(data + i);
            vlo = _mm256_min_pd(vlo, v);
            vhi = _mm256_max_pd(vhi, v);
        }
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, vlo);
        lo = lanes[0];
        for (int k = 1; k < 4; ++k) lo = lanes[k] < lo ? lanes[k] : lo;
        _mm256_store_pd(lanes, vhi);
        hi = lanes[0];
        for (int k = 1; k < 4; ++k) hi = lanes[k] > hi ? lanes[k] : hi;
    } else {
        lo = data[0];
        hi = data[0];
        i = 1;
    }
    for (; i < n; ++i) {
        lo = data[i] < lo ? data[i] : lo;
        hi = data[i] > hi ? data[i] : hi;
    }
    *mn = lo;
    *mx = hi;
}

} // namespace

const Kernels* avx2() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Kernels k{stencil_step_avx2, wave_step_avx2, block_match_avx2, min_max_avx2,
                           "avx2"};
    return &k;
}

} // namespace pdeid::kernels

#else

namespace pdeid::kernels {

const Kernels* avx2() { return nullptr; }

} // namespace pdeid::kernels

#endif
