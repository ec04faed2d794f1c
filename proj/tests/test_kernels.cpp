#include <doctest.h>

#include <algorithm>
#include <cstring>

#include "pdeid/kernels.hpp"
#include "pdeid/rng.hpp"
#include "support/oracles.hpp"

using namespace pdeid;

namespace {

std::vector<double> random_frame(Rng& rng, int ny, int nx, double lo = -5.0, double hi = 12.0) {
    std::vector<double> f(static_cast<size_t>(ny) * nx);
    for (double& v : f) v = rng.uniform(lo, hi);
    return f;
}

} // namespace

TEST_CASE("scalar block matching equals the exhaustive oracle") {
    Rng rng(11);
    const auto& k = kernels::scalar();
    for (int trial = 0; trial < 200; ++trial) {
        const int ny = 3 + static_cast<int>(rng.below(8));
        const int nx = 3 + static_cast<int>(rng.below(8));
        std::vector<double> prev = random_frame(rng, ny, nx);
        std::vector<double> next = random_frame(rng, ny, nx);
        if (trial % 2 == 0) {
            // coarse integer values force exact ties; the tie-break must match
            for (double& v : prev) v = std::floor(v);
            for (double& v : next) v = std::floor(v);
        }
        double sx = 0.0, sy = 0.0;
        k.block_match(prev.data(), next.data(), ny, nx, &sx, &sy);
        const auto ref = oracles::block_match_reference(prev.data(), next.data(), ny, nx);
        CHECK(sx == ref.sum_dx);
        CHECK(sy == ref.sum_dy);
    }
}

TEST_CASE("scalar min_max equals std::minmax_element") {
    Rng rng(12);
    const auto& k = kernels::scalar();
    for (int trial = 0; trial < 50; ++trial) {
        const size_t n = 1 + rng.below(2000);
        std::vector<double> v(n);
        for (double& x : v) x = rng.uniform(-100.0, 100.0);
        double mn = 0.0, mx = 0.0;
        k.min_max(v.data(), v.size(), &mn, &mx);
        const auto ref = std::minmax_element(v.begin(), v.end());
        CHECK(mn == *ref.first);
        CHECK(mx == *ref.second);
    }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
    const kernels::Kernels* vec = kernels::avx2();
    if (!vec) {
        MESSAGE("AVX2 unavailable on this host; dispatch falls back to scalar");
        return;
    }
    const auto& ref = kernels::scalar();
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int ny = 3 + static_cast<int>(rng.below(30));
        const int nx = 3 + static_cast<int>(rng.below(30));
        const std::vector<double> u = random_frame(rng, ny, nx);
        const std::vector<double> uprev = random_frame(rng, ny, nx);
        const double rd = rng.uniform(0.0, 0.3);
        const double rx = rng.uniform(-0.5, 0.5);
        const double ry = rng.uniform(-0.5, 0.5);
        const double rxp = std::max(rx, 0.0), rxm = std::min(rx, 0.0);
        const double ryp = std::max(ry, 0.0), rym = std::min(ry, 0.0);

        std::vector<double> out_a(u.size(), 0.0), out_b(u.size(), 0.0);
        ref.stencil_step(u.data(), out_a.data(), ny, nx, rd, rxp, rxm, ryp, rym);
        vec->stencil_step(u.data(), out_b.data(), ny, nx, rd, rxp, rxm, ryp, rym);
        CHECK(std::memcmp(out_a.data(), out_b.data(), out_a.size() * sizeof(double)) == 0);

        const double omb = rng.uniform(0.8, 1.0);
        const double inv1pa = rng.uniform(0.9, 1.0);
        std::fill(out_a.begin(), out_a.end(), 0.0);
        std::fill(out_b.begin(), out_b.end(), 0.0);
        ref.wave_step(u.data(), uprev.data(), out_a.data(), ny, nx, rd, rxp, rxm, ryp, rym, omb,
                      inv1pa);
        vec->wave_step(u.data(), uprev.data(), out_b.data(), ny, nx, rd, rxp, rxm, ryp, rym, omb,
                       inv1pa);
        CHECK(std::memcmp(out_a.data(), out_b.data(), out_a.size() * sizeof(double)) == 0);

        std::vector<double> next = random_frame(rng, ny, nx);
        if (trial % 3 == 0) {
            for (double& v : next) v = std::floor(v); // exercise exact ties
        }
        double sxa = 0.0, sya = 0.0, sxb = 0.0, syb = 0.0;
        ref.block_match(u.data(), next.data(), ny, nx, &sxa, &sya);
        vec->block_match(u.data(), next.data(), ny, nx, &sxb, &syb);
        CHECK(sxa == sxb);
        CHECK(sya == syb);

        double mna = 0.0, mxa = 0.0, mnb = 0.0, mxb = 0.0;
        ref.min_max(u.data(), u.size(), &mna, &mxa);
        vec->min_max(u.data(), u.size(), &mnb, &mxb);
        CHECK(mna == mnb);
        CHECK(mxa == mxb);
    }
}

TEST_CASE("active kernel set reports a known name") {
    const std::string name = kernels::active_name();
    CHECK((name == "scalar" || name == "avx2"));
}
