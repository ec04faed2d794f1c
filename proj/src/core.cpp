#include "pdeid/core.hpp"

#include <cmath>

namespace pdeid {

bool GridField::valid() const {
    if (nt < 2 || ny < 3 || nx < 3) return false;
    if (values.size() != static_cast<size_t>(nt) * ny * nx) return false;
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

namespace {

// Table 2 row order: class k at index k-1 holds its (utt, ut, conv) bits.
constexpr std::array<std::array<bool, 3>, 8> kClassBits{{
    {false, true, false},  // 1: u_t - c lap(u) = 0
    {false, true, true},   // 2: u_t - c lap(u) + B.grad(u) = 0
    {false, false, false}, // 3: -c lap(u) = 0
    {false, false, true},  // 4: -c lap(u) + B.grad(u) = 0
    {true, false, false},  // 5: u_tt - c lap(u) = 0
    {true, false, true},   // 6: u_tt - c lap(u) + B.grad(u) = 0
    {true, true, false},   // 7: u_tt + d u_t - c lap(u) = 0
    {true, true, true},    // 8: u_tt + d u_t - c lap(u) + B.grad(u) = 0
}};

} // namespace

int class_from_bits(bool has_utt, bool has_ut, bool has_conv) {
    for (int k = 0; k < 8; ++k) {
        if (kClassBits[k][0] == has_utt && kClassBits[k][1] == has_ut &&
            kClassBits[k][2] == has_conv) {
            return k + 1;
        }
    }
    return 0; // unreachable: all 8 triples are covered
}

std::array<bool, 3> bits_from_class(int class_id) {
    if (class_id < 1 || class_id > 8) {
        throw Error(ErrorCode::DataError, "class_id out of range 1..8");
    }
    return kClassBits[class_id - 1];
}

TermLabels labels_from_bits(bool has_utt, bool has_ut, bool has_conv) {
    TermLabels l;
    l.has_utt = has_utt;
    l.has_ut = has_ut;
    l.has_conv = has_conv;
    l.class_id = class_from_bits(has_utt, has_ut, has_conv);
    return l;
}

NormalizedField normalize_field(const GridField& field) {
    NormalizedField out;
    out.field = field;
    double lo = field.values.empty() ? 0.0 : field.values[0];
    double hi = lo;
    for (double v : field.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    out.vmin = lo;
    out.vmax = hi;
    if (hi <= lo) {
        out.constant_field = true;
        for (double& v : out.field.values) v = 0.0;
        return out;
    }
    const double inv = 1.0 / (hi - lo);
    for (double& v : out.field.values) v = (v - lo) * inv;
    return out;
}

bool FeatureVector::finite() const {
    if (values.size() != feature_names::kTotal) return false;
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

namespace feature_names {

namespace {

std::vector<std::string> build_names() {
    std::vector<std::string> n;
    n.reserve(kTotal);
    // stat: SI Table S1 order
    n.push_back("stat_mean_50_450");
    n.push_back("stat_std_50_450");
    n.push_back("stat_min_350_450");
    n.push_back("stat_max_350_450");
    n.push_back("stat_mean_350_450");
    n.push_back("stat_std_350_450");
    n.push_back("stat_skew_50_450");
    // amp: SI Table S2 order
    n.push_back("amp_max_50_450");
    n.push_back("amp_argmax_50_450");
    n.push_back("amp_mean_350_450");
    n.push_back("amp_std_350_450");
    n.push_back("amp_skew_350_450");
    n.push_back("amp_mean_250_450");
    n.push_back("amp_std_250_450");
    n.push_back("amp_peak_count");
    n.push_back("amp_valley_count");
    n.push_back("amp_mean_ratio_late_early");
    n.push_back("amp_max_ratio_late_early");
    // fft: five bins of [0,0.1) cycles/step, four stats each
    for (int b = 1; b <= 5; ++b) {
        const std::string base = "fft_b" + std::to_string(b) + "_";
        n.push_back(base + "mean");
        n.push_back(base + "std");
        n.push_back(base + "min");
        n.push_back(base + "max");
    }
    // motion
    n.push_back("motion_mean_magnitude");
    // sym: statistics of the symmetry signal S
    n.push_back("sym_mean");
    n.push_back("sym_std");
    n.push_back("sym_min");
    n.push_back("sym_max");
    n.push_back("sym_absmean");
    n.push_back("sym_absstd");
    n.push_back("sym_skew");
    return n;
}

} // namespace

const std::vector<std::string>& all() {
    static const std::vector<std::string> names = build_names();
    return names;
}

const std::string& family_of(int index) {
    static const std::string stat = "stat", amp = "amp", fft = "fft", motion = "motion",
                             sym = "sym";
    if (index < kStatCount) return stat;
    if (index < kStatCount + kAmpCount) return amp;
    if (index < kStatCount + kAmpCount + kFftCount) return fft;
    if (index < kStatCount + kAmpCount + kFftCount + kMotionCount) return motion;
    return sym;
}

const std::vector<std::string>& families() {
    static const std::vector<std::string> f{"stat", "amp", "fft", "motion", "sym"};
    return f;
}

} // namespace feature_names

} // namespace pdeid
