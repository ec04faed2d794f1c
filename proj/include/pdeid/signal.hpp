#pragma once

#include <array>
#include <vector>

#include "pdeid/core.hpp"
#include "pdeid/savgol.hpp"

namespace pdeid::signal {

/// Spatially averaged change between consecutive frames; length nt-1.
struct TimeSignal {
    std::vector<double> values;
    int t0_index = 0;
};

/// Upper/lower spline envelopes, their difference, and the extrema they
/// interpolate.
struct EnvelopePair {
    std::vector<double> upper;
    std::vector<double> lower;
    std::vector<double> amplitude;
    std::vector<int> peaks;
    std::vector<int> valleys;
};

struct ExtremaResult {
    std::vector<int> peaks;
    std::vector<int> valleys;
};

// Index windows used by the feature tables; half-open [lo, hi) on the
// length-(nt-1) signal.
inline constexpr int kWinEarlyLo = 50;
inline constexpr int kWinHi = 450;
inline constexpr int kWinLateLo = 350;
inline constexpr int kWinMidLo = 250;

// Savitzky-Golay smoothing configuration applied to the prepared signal.
inline constexpr int kSmoothWindow = 21;
inline constexpr int kSmoothOrder = 3;

/// Minimum fraction of the signal range an extremum must protrude to count.
inline constexpr double kProminenceFraction = 0.01;

TimeSignal delta_signal(const GridField& field);

/// Min-max normalize to [0,1] (constant signals map to zeros), then smooth.
TimeSignal prepare_signal(const TimeSignal& sig);

std::array<double, 7> stats_features(const TimeSignal& sig);

ExtremaResult find_extrema(const TimeSignal& sig);

EnvelopePair envelopes(const TimeSignal& sig);

std::array<double, 11> amplitude_features(const EnvelopePair& env);

std::array<double, 20> fft_features(const TimeSignal& sig);

} // namespace pdeid::signal
