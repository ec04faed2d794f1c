#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pdeid/error.hpp"

namespace pdeid {

/// Spatiotemporal solution tensor u(t, y, x) on a regular grid, row-major.
struct GridField {
    std::vector<double> values;
    int nt = 0;
    int ny = 0;
    int nx = 0;
    double dt = 1e-4; // seconds per stored step

    GridField() = default;
    GridField(int nt_, int ny_, int nx_, double dt_ = 1e-4)
        : values(static_cast<size_t>(nt_) * ny_ * nx_, 0.0), nt(nt_), ny(ny_), nx(nx_), dt(dt_) {}

    double& at(int t, int y, int x) {
        return values[(static_cast<size_t>(t) * ny + y) * nx + x];
    }
    double at(int t, int y, int x) const {
        return values[(static_cast<size_t>(t) * ny + y) * nx + x];
    }
    const double* frame(int t) const { return values.data() + static_cast<size_t>(t) * ny * nx; }
    double* frame(int t) { return values.data() + static_cast<size_t>(t) * ny * nx; }
    size_t frame_size() const { return static_cast<size_t>(ny) * nx; }

    /// Shape and finiteness check per the type invariants.
    bool valid() const;
};

/// PDE definition e*u_tt + d*u_t - c*lap(u) + bx*u_x + by*u_y = 0 with four
/// Dirichlet walls. Wall order: bc[0]=x-min, bc[1]=y-min, bc[2]=y-max, bc[3]=x-max
/// (BC1, BC2, BC3, BC4).
struct PdeSpec {
    double e = 0.0;
    double d = 0.0;
    double c = 1.0;
    double bx = 0.0;
    double by = 0.0;
    std::array<double, 4> bc{0.0, 0.0, 0.0, 0.0}; // BC1..BC4
    double ic = 0.1;
    double dt_sim = 1e-4;
    int nt = 500;
    int ny = 21;
    int nx = 21;
    double domain_len = 1.0;

    bool time_dependent() const { return e != 0.0 || d != 0.0; }
    double bc1() const { return bc[0]; }
    double bc2() const { return bc[1]; }
    double bc3() const { return bc[2]; }
    double bc4() const { return bc[3]; }
};

/// Presence bits for the three optional terms plus the derived class id 1..8.
struct TermLabels {
    bool has_utt = false;
    bool has_ut = false;
    bool has_conv = false;
    int class_id = 0;
};

int class_from_bits(bool has_utt, bool has_ut, bool has_conv);
std::array<bool, 3> bits_from_class(int class_id);
TermLabels labels_from_bits(bool has_utt, bool has_ut, bool has_conv);

struct NormalizedField {
    GridField field;
    double vmin = 0.0;
    double vmax = 0.0;
    bool constant_field = false;
};

/// Min-max rescale to [0,1]. A constant input maps to all-zeros with the
/// constant_field flag set.
NormalizedField normalize_field(const GridField& field);

/// 46-entry named feature vector; order fixed as stat|amp|fft|motion|sym.
struct FeatureVector {
    std::vector<double> values;
    bool finite() const;
};

namespace feature_names {

inline constexpr int kStatCount = 7;
inline constexpr int kAmpCount = 11;
inline constexpr int kFftCount = 20;
inline constexpr int kMotionCount = 1;
inline constexpr int kSymCount = 7;
inline constexpr int kTotal = kStatCount + kAmpCount + kFftCount + kMotionCount + kSymCount;

const std::vector<std::string>& all();
const std::string& family_of(int index); // "stat", "amp", "fft", "motion", "sym"
const std::vector<std::string>& families();

} // namespace feature_names

/// One dataset entry; the raw field lives on disk (see io), features are
/// filled in by the featurize step.
struct SampleEntry {
    std::string id;
    PdeSpec spec;
    TermLabels labels;
    FeatureVector features; // empty until featurized
};

struct Dataset {
    std::vector<SampleEntry> samples;
    uint64_t seed = 0;
};

} // namespace pdeid
