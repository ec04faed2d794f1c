#pragma once

#include <cmath>
#include <cstddef>

// Per-point arithmetic shared by the scalar kernels and the SIMD tail paths.
// Expression grouping here is the contract: the vector kernels replicate it
// exactly so scalar and SIMD results stay bit-identical.

namespace pdeid::kernels::detail {

inline double stencil_point(double c, double w, double e, double s, double n, double rd,
                            double rxp, double rxm, double ryp, double rym) {
    const double lap = ((e + w) + (n + s)) - 4.0 * c;
    const double conv_x = rxp * (c - w) + rxm * (e - c);
    const double conv_y = ryp * (c - s) + rym * (n - c);
    return ((c + rd * lap) - conv_x) - conv_y;
}

inline double wave_point(double c, double p, double w, double e, double s, double n, double rd2,
                         double rxp2, double rxm2, double ryp2, double rym2, double omb,
                         double inv1pa) {
    const double lap = ((e + w) + (n + s)) - 4.0 * c;
    const double conv_x = rxp2 * (c - w) + rxm2 * (e - c);
    const double conv_y = ryp2 * (c - s) + rym2 * (n - c);
    const double acc = (((2.0 * c - omb * p) + rd2 * lap) - conv_x) - conv_y;
    return inv1pa * acc;
}

// Offsets in tie-break priority: ascending k*k+l*l, then lexicographic (k,l).
inline constexpr int kOffY[8] = {-1, 0, 0, 1, -1, -1, 1, 1};
inline constexpr int kOffX[8] = {0, -1, 1, 0, -1, 1, -1, 1};

inline int block_match_point(const double* next, int nx, int y, int x, double ref) {
    double best = std::abs(next[(static_cast<size_t>(y) + kOffY[0]) * nx + x + kOffX[0]] - ref);
    int pick = 0;
    for (int o = 1; o < 8; ++o) {
        const double err =
            std::abs(next[(static_cast<size_t>(y) + kOffY[o]) * nx + x + kOffX[o]] - ref);
        if (err < best) {
            best = err;
            pick = o;
        }
    }
    return pick;
}

} // namespace pdeid::kernels::detail
