#pragma once

// Independent reference implementations used only by tests. These stay
// deliberately naive (direct definitions, dense solves) so they exercise a
// different code path than the library.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "pdeid/core.hpp"

namespace oracles {

/// O(n^2) DFT straight from the definition.
inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
    const size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                               static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

/// Least-squares polynomial fit over one window by solving the normal
/// equations with Gaussian elimination; returns the fitted value at eval_x
/// (offsets are relative to the window start).
inline double polyfit_eval(const std::vector<double>& y, int order, double eval_x) {
    const int m = order + 1;
    const int n = static_cast<int>(y.size());
    std::vector<double> ata(static_cast<size_t>(m) * m, 0.0);
    std::vector<double> aty(m, 0.0);
    for (int i = 0; i < n; ++i) {
        double powi[16];
        powi[0] = 1.0;
        for (int p = 1; p < m; ++p) powi[p] = powi[p - 1] * static_cast<double>(i);
        for (int a = 0; a < m; ++a) {
            aty[a] += powi[a] * y[i];
            for (int b = 0; b < m; ++b) ata[a * m + b] += powi[a] * powi[b];
        }
    }
    // gaussian elimination with partial pivoting
    std::vector<double> rhs = aty;
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(ata[r * m + col]) > std::abs(ata[pivot * m + col])) pivot = r;
        }
        for (int j = 0; j < m; ++j) std::swap(ata[col * m + j], ata[pivot * m + j]);
        std::swap(rhs[col], rhs[pivot]);
        for (int r = col + 1; r < m; ++r) {
            const double f = ata[r * m + col] / ata[col * m + col];
            for (int j = col; j < m; ++j) ata[r * m + j] -= f * ata[col * m + j];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> beta(m, 0.0);
    for (int r = m - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int j = r + 1; j < m; ++j) s -= ata[r * m + j] * beta[j];
        beta[r] = s / ata[r * m + r];
    }
    double v = 0.0;
    for (int p = m - 1; p >= 0; --p) v = v * eval_x + beta[p];
    return v;
}

/// Savitzky-Golay with interp-style edges, done the slow way: fit each
/// window with the normal equations and evaluate.
inline std::vector<double> savgol_reference(const std::vector<double>& x, int window,
                                            int order) {
    const int n = static_cast<int>(x.size());
    const int half = window / 2;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        int start = i - half;
        if (start < 0) start = 0;
        if (start > n - window) start = n - window;
        const std::vector<double> win(x.begin() + start, x.begin() + start + window);
        out[i] = polyfit_eval(win, order, static_cast<double>(i - start));
    }
    return out;
}

/// Exhaustive block matching implementing the tie-break rule literally:
/// minimize the tuple (error, k^2+l^2, k, l) over all nonzero offsets.
struct BlockMatchOracle {
    double sum_dx = 0.0;
    double sum_dy = 0.0;
};

inline BlockMatchOracle block_match_reference(const double* prev, const double* next, int ny,
                                              int nx) {
    BlockMatchOracle acc;
    for (int y = 1; y < ny - 1; ++y) {
        for (int x = 1; x < nx - 1; ++x) {
            const double ref = prev[y * nx + x];
            double best_err = 0.0;
            int best_norm = 0, best_k = 0, best_l = 0;
            bool found = false;
            for (int k = -1; k <= 1; ++k) {
                for (int l = -1; l <= 1; ++l) {
                    if (k == 0 && l == 0) continue;
                    const double err = std::abs(next[(y + k) * nx + (x + l)] - ref);
                    const int norm = k * k + l * l;
                    const bool better =
                        !found || err < best_err ||
                        (err == best_err &&
                         (norm < best_norm ||
                          (norm == best_norm &&
                           (k < best_k || (k == best_k && l < best_l)))));
                    if (better) {
                        best_err = err;
                        best_norm = norm;
                        best_k = k;
                        best_l = l;
                        found = true;
                    }
                }
            }
            acc.sum_dx += best_l;
            acc.sum_dy += best_k;
        }
    }
    return acc;
}

/// Dense direct solve of the steady upwind system -c lap(u) + B.grad(u) = 0
/// on the interior, Dirichlet walls fixed. Gaussian elimination with partial
/// pivoting on the (ny-2)(nx-2) system.
inline std::vector<double> steady_direct_solve(const pdeid::PdeSpec& spec) {
    const int ny = spec.ny;
    const int nx = spec.nx;
    const double h = spec.domain_len / (nx - 1);
    const int m = (ny - 2) * (nx - 2);
    auto idx = [&](int y, int x) { return (y - 1) * (nx - 2) + (x - 1); };

    std::vector<double> grid(static_cast<size_t>(ny) * nx, spec.ic);
    for (int y = 0; y < ny; ++y) {
        grid[static_cast<size_t>(y) * nx] = spec.bc1();
        grid[static_cast<size_t>(y) * nx + nx - 1] = spec.bc4();
    }
    for (int x = 0; x < nx; ++x) {
        grid[x] = spec.bc2();
        grid[static_cast<size_t>(ny - 1) * nx + x] = spec.bc3();
    }

    const double ch2 = spec.c / (h * h);
    const double bxp = std::max(spec.bx, 0.0) / h, bxm = std::min(spec.bx, 0.0) / h;
    const double byp = std::max(spec.by, 0.0) / h, bym = std::min(spec.by, 0.0) / h;
    const double cw = ch2 + bxp, ce = ch2 - bxm, cs = ch2 + byp, cn = ch2 - bym;
    const double diag = cw + ce + cs + cn;

    std::vector<double> a(static_cast<size_t>(m) * m, 0.0);
    std::vector<double> b(m, 0.0);
    for (int y = 1; y < ny - 1; ++y) {
        for (int x = 1; x < nx - 1; ++x) {
            const int r = idx(y, x);
            a[static_cast<size_t>(r) * m + r] = diag;
            auto neighbor = [&](int yy, int xx, double w) {
                if (yy == 0 || yy == ny - 1 || xx == 0 || xx == nx - 1) {
                    b[r] += w * grid[static_cast<size_t>(yy) * nx + xx];
                } else {
                    a[static_cast<size_t>(r) * m + idx(yy, xx)] = -w;
                }
            };
            neighbor(y, x - 1, cw);
            neighbor(y, x + 1, ce);
            neighbor(y - 1, x, cs);
            neighbor(y + 1, x, cn);
        }
    }
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(a[static_cast<size_t>(r) * m + col]) >
                std::abs(a[static_cast<size_t>(pivot) * m + col]))
                pivot = r;
        }
        if (a[static_cast<size_t>(pivot) * m + col] == 0.0) {
            throw std::runtime_error("singular steady system");
        }
        if (pivot != col) {
            for (int j = 0; j < m; ++j) {
                std::swap(a[static_cast<size_t>(col) * m + j],
                          a[static_cast<size_t>(pivot) * m + j]);
            }
            std::swap(b[col], b[pivot]);
        }
        for (int r = col + 1; r < m; ++r) {
            const double f =
                a[static_cast<size_t>(r) * m + col] / a[static_cast<size_t>(col) * m + col];
            if (f == 0.0) continue;
            for (int j = col; j < m; ++j) {
                a[static_cast<size_t>(r) * m + j] -= f * a[static_cast<size_t>(col) * m + j];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<double> sol(m, 0.0);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < m; ++j) s -= a[static_cast<size_t>(r) * m + j] * sol[j];
        sol[r] = s / a[static_cast<size_t>(r) * m + r];
    }
    // embed back into the full grid
    for (int y = 1; y < ny - 1; ++y) {
        for (int x = 1; x < nx - 1; ++x) {
            grid[static_cast<size_t>(y) * nx + x] = sol[idx(y, x)];
        }
    }
    return grid;
}

} // namespace oracles
