#include <doctest.h>

#include <cmath>

#include "pdeid/rng.hpp"
#include "pdeid/spatial.hpp"

using namespace pdeid;

namespace {

PdeSpec spec_with_bc(double b1, double b2, double b3, double b4) {
    PdeSpec s;
    s.bc = {b1, b2, b3, b4};
    s.nt = 3;
    s.ny = 21;
    s.nx = 21;
    return s;
}

GridField field_from_profile_y(const std::vector<double>& p, int nt = 3) {
    GridField f(nt, 21, 21);
    for (int t = 0; t < nt; ++t) {
        for (int y = 0; y < 21; ++y) {
            for (int x = 0; x < 21; ++x) f.at(t, y, x) = p[y];
        }
    }
    return f;
}

} // namespace

TEST_CASE("marginal profiles of simple fields") {
    GridField constant(2, 21, 21);
    for (double& v : constant.values) v = 4.5;
    const auto pc = spatial::marginal_profiles(constant, 1);
    for (double v : pc.x_profile) CHECK(v == doctest::Approx(4.5));
    for (double v : pc.y_profile) CHECK(v == doctest::Approx(4.5));

    GridField separable(2, 21, 21);
    for (int t = 0; t < 2; ++t) {
        for (int y = 0; y < 21; ++y) {
            for (int x = 0; x < 21; ++x) separable.at(t, y, x) = static_cast<double>(x);
        }
    }
    const auto ps = spatial::marginal_profiles(separable, 0);
    for (int x = 0; x < 21; ++x) CHECK(ps.x_profile[x] == doctest::Approx(x));
    for (int y = 0; y < 21; ++y) CHECK(ps.y_profile[y] == doctest::Approx(10.0));
}

TEST_CASE("marginal profiles match the double-loop oracle") {
    Rng rng(701);
    GridField f(2, 21, 21);
    for (double& v : f.values) v = rng.uniform(-2.0, 2.0);
    const auto p = spatial::marginal_profiles(f, 1);
    for (int x = 0; x < 21; ++x) {
        double acc = 0.0;
        for (int y = 0; y < 21; ++y) acc += f.at(1, y, x);
        CHECK(p.x_profile[x] == doctest::Approx(acc / 21.0).epsilon(1e-13));
    }
    for (int y = 0; y < 21; ++y) {
        double acc = 0.0;
        for (int x = 0; x < 21; ++x) acc += f.at(1, y, x);
        CHECK(p.y_profile[y] == doctest::Approx(acc / 21.0).epsilon(1e-13));
    }
}

TEST_CASE("flow_direction: axis-aligned, mixed, and degenerate cases") {
    const auto axis = spatial::flow_direction(spec_with_bc(6.0, 1.0, 1.0, 0.0));
    CHECK(axis.d1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(axis.d2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(!axis.degenerate);

    // dC = (6, 5): d1 = 6/sqrt(61) = 0.768, d2 = 5/sqrt(61) = 0.640
    const auto mixed = spatial::flow_direction(spec_with_bc(6.0, 5.0, 0.0, 0.0));
    CHECK(mixed.d1 == doctest::Approx(6.0 / std::sqrt(61.0)).epsilon(1e-12));
    CHECK(mixed.d2 == doctest::Approx(5.0 / std::sqrt(61.0)).epsilon(1e-12));
    CHECK(mixed.d1 == doctest::Approx(0.768).epsilon(1e-3));
    CHECK(mixed.d2 == doctest::Approx(0.640).epsilon(1e-3));
    CHECK(mixed.d1 * mixed.d1 + mixed.d2 * mixed.d2 == doctest::Approx(1.0).epsilon(1e-12));

    const auto degen = spatial::flow_direction(spec_with_bc(2.0, 2.0, 2.0, 2.0));
    CHECK(degen.degenerate);
    CHECK(degen.d1 == 1.0);
    CHECK(degen.d2 == 0.0);
}

TEST_CASE("symmetry_signal vanishes for a mirror-symmetric profile") {
    std::vector<double> p(21);
    for (int y = 0; y <= 10; ++y) {
        p[y] = std::cos((y - 10.0) / 4.0);
        p[20 - y] = p[y]; // exact mirror about index 10
    }
    const GridField f = field_from_profile_y(p);
    const auto s = spatial::symmetry_signal(f, spec_with_bc(6.0, 1.0, 1.0, 0.0), 2);
    REQUIRE(s.size() == 10);
    for (double v : s) CHECK(v == 0.0); // exact: mirrored values are identical
}

TEST_CASE("symmetry_signal of a linear profile has the closed form") {
    std::vector<double> p(21);
    for (int y = 0; y < 21; ++y) p[y] = static_cast<double>(y);
    const GridField f = field_from_profile_y(p);
    // v1 = normalized y-profile = g/20, so S[g] = (2g - 20)/20
    const auto s = spatial::symmetry_signal(f, spec_with_bc(6.0, 1.0, 1.0, 0.0), 1);
    for (int g = 0; g < 10; ++g) {
        CHECK(s[g] == doctest::Approx((2.0 * g - 20.0) / 20.0).epsilon(1e-12));
    }
}

TEST_CASE("spatial_features on a crafted symmetry signal") {
    // v1 profile already in [0,1]: S = [-1, 1, 0, ..., 0]
    std::vector<double> p(21, 0.5);
    p[0] = 0.0;
    p[20] = 1.0;
    p[1] = 1.0;
    p[19] = 0.0;
    const GridField f = field_from_profile_y(p);
    const auto feats = spatial::spatial_features(f, spec_with_bc(6.0, 1.0, 1.0, 0.0));
    CHECK(feats[0] == doctest::Approx(0.0).epsilon(1e-12)); // mean
    CHECK(feats[2] == doctest::Approx(-1.0).epsilon(1e-12)); // min
    CHECK(feats[3] == doctest::Approx(1.0).epsilon(1e-12));  // max
    CHECK(feats[4] == doctest::Approx(0.2).epsilon(1e-12));  // mean |S|
}

TEST_CASE("spatial_features of a zero symmetry signal are all zero") {
    std::vector<double> p(21);
    for (int y = 0; y < 21; ++y) p[y] = std::abs(y - 10.0);
    const GridField f = field_from_profile_y(p);
    const auto feats = spatial::spatial_features(f, spec_with_bc(6.0, 1.0, 1.0, 0.0));
    for (double v : feats) CHECK(v == 0.0);
}

TEST_CASE("reflecting the field about the midplane flips S exactly") {
    Rng rng(702);
    GridField f(2, 21, 21);
    for (double& v : f.values) v = rng.uniform(-1.0, 5.0);
    GridField g(2, 21, 21);
    for (int t = 0; t < 2; ++t) {
        for (int y = 0; y < 21; ++y) {
            for (int x = 0; x < 21; ++x) g.at(t, y, x) = f.at(t, 20 - y, x);
        }
    }
    // bc2 == bc3 keeps the flow direction invariant under the reflection
    const PdeSpec spec = spec_with_bc(6.0, 1.0, 1.0, 0.0);
    const auto sf = spatial::symmetry_signal(f, spec, 1);
    const auto sg = spatial::symmetry_signal(g, spec, 1);
    for (size_t i = 0; i < sf.size(); ++i) CHECK(sg[i] == -sf[i]);
}

TEST_CASE("spatial_features invariant to affine rescaling of the field") {
    Rng rng(703);
    GridField f(2, 21, 21);
    for (double& v : f.values) v = rng.uniform(0.0, 1.0);
    GridField g = f;
    for (double& v : g.values) v = 2.5 * v - 1.0;
    const PdeSpec spec = spec_with_bc(6.0, 5.0, 1.0, 0.0);
    const auto sf = spatial::spatial_features(f, spec);
    const auto sg = spatial::spatial_features(g, spec);
    for (size_t i = 0; i < sf.size(); ++i) CHECK(sf[i] == doctest::Approx(sg[i]).epsilon(1e-9));
}
