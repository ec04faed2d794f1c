#include "pdeid/kernels.hpp"

#include "kernels_detail.hpp"

namespace pdeid::kernels {

namespace {

using namespace detail;

void stencil_step_scalar(const double* u, double* out, int ny, int nx, double rd, double rxp,
                         double rxm, double ryp, double rym) {
    for (int y = 1; y < ny - 1; ++y) {
        const double* row = u + static_cast<size_t>(y) * nx;
        const double* rowS = row - nx;
        const double* rowN = row + nx;
        double* orow = out + static_cast<size_t>(y) * nx;
        for (int x = 1; x < nx - 1; ++x) {
            orow[x] = stencil_point(row[x], row[x - 1], row[x + 1], rowS[x], rowN[x], rd, rxp,
                                    rxm, ryp, rym);
        }
    }
}

void wave_step_scalar(const double* u, const double* uprev, double* out, int ny, int nx,
                      double rd2, double rxp2, double rxm2, double ryp2, double rym2, double omb,
                      double inv1pa) {
    for (int y = 1; y < ny - 1; ++y) {
        const size_t off = static_cast<size_t>(y) * nx;
        const double* row = u + off;
        const double* rowS = row - nx;
        const double* rowN = row + nx;
        const double* prow = uprev + off;
        double* orow = out + off;
        for (int x = 1; x < nx - 1; ++x) {
            orow[x] = wave_point(row[x], prow[x], row[x - 1], row[x + 1], rowS[x], rowN[x], rd2,
                                 rxp2, rxm2, ryp2, rym2, omb, inv1pa);
        }
    }
}

void block_match_scalar(const double* prev, const double* next, int ny, int nx, double* sum_dx,
                        double* sum_dy) {
    long long sx = 0;
    long long sy = 0;
    for (int y = 1; y < ny - 1; ++y) {
        const double* prow = prev + static_cast<size_t>(y) * nx;
        for (int x = 1; x < nx - 1; ++x) {
            const int pick = block_match_point(next, nx, y, x, prow[x]);
            sx += kOffX[pick];
            sy += kOffY[pick];
        }
    }
    *sum_dx = static_cast<double>(sx);
    *sum_dy = static_cast<double>(sy);
}

void min_max_scalar(const double* data, size_t n, double* mn, double* mx) {
    double lo = data[0];
    double hi = data[0];
    for (size_t i = 1; i < n; ++i) {
        lo = data[i] < lo ? data[i] : lo;
        hi = data[i] > hi ? data[i] : hi;
    }
    *mn = lo;
    *mx = hi;
}

} // namespace

const Kernels& scalar() {
    static const Kernels k{stencil_step_scalar, wave_step_scalar, block_match_scalar,
                           min_max_scalar, "scalar"};
    return k;
}

} // namespace pdeid::kernels
