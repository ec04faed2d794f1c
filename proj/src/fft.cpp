#include "pdeid/fft.hpp"

#include <cmath>
#include <cstdint>

namespace pdeid::fft {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using cd = std::complex<double>;

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

size_t next_pow2(size_t n) {
    size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(std::vector<cd>& a, bool inverse) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const cd wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= inv;
    }
}

// Chirp factor exp(sign * i * pi * j^2 / n); j^2 reduced mod 2n in exact
// integer arithmetic so the phase argument stays small.
cd chirp(size_t j, size_t n, double sign) {
    const uint64_t r = (static_cast<uint64_t>(j) * j) % (2 * static_cast<uint64_t>(n));
    const double ang = sign * kPi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(ang), std::sin(ang)};
}

// Bluestein: X_k = conj(w_k) * (u * v)_k with u_j = a_j * conj(w_j),
// v_j = w_j, w_j = exp(i pi j^2 / n), convolved via a power-of-two FFT.
std::vector<cd> fft_bluestein(const std::vector<cd>& a) {
    const size_t n = a.size();
    const size_t m = next_pow2(2 * n - 1);
    std::vector<cd> u(m, cd(0.0, 0.0));
    std::vector<cd> v(m, cd(0.0, 0.0));
    for (size_t j = 0; j < n; ++j) {
        u[j] = a[j] * chirp(j, n, -1.0);
        const cd w = chirp(j, n, 1.0);
        v[j] = w;
        if (j != 0) v[m - j] = w;
    }
    fft_pow2(u, false);
    fft_pow2(v, false);
    for (size_t j = 0; j < m; ++j) u[j] *= v[j];
    fft_pow2(u, true);
    std::vector<cd> out(n);
    for (size_t k = 0; k < n; ++k) out[k] = u[k] * chirp(k, n, -1.0);
    return out;
}

} // namespace

std::vector<cd> forward(const std::vector<cd>& input) {
    if (input.size() <= 1) return input;
    if (is_pow2(input.size())) {
        std::vector<cd> a = input;
        fft_pow2(a, false);
        return a;
    }
    return fft_bluestein(input);
}

std::vector<double> magnitude(const std::vector<double>& input) {
    std::vector<cd> a(input.size());
    for (size_t i = 0; i < input.size(); ++i) a[i] = cd(input[i], 0.0);
    const std::vector<cd> spec = forward(a);
    std::vector<double> mag(spec.size());
    for (size_t i = 0; i < spec.size(); ++i) mag[i] = std::abs(spec[i]);
    return mag;
}

} // namespace pdeid::fft
