#pragma once

#include <string>
#include <vector>

#include "pdeid/core.hpp"

namespace pdeid::coeff {

struct WaveSpeedResult {
    double speed = 0.0; // |slope| in cells per output step
    double slope = 0.0; // signed fitted slope
    int frames_tracked = 0;
};

/// Front positions (fractional cells from the driving wall) per frame over
/// the first traversal: tracking starts at the first frame with a 0.5
/// crossing of the per-frame normalized v2 profile and stops at the first
/// reversal or lost crossing.
std::vector<double> front_positions(const GridField& field, const PdeSpec& spec);

/// Line fit through the tracked front positions; needs >= 10 tracked frames.
WaveSpeedResult wave_speed_estimate(const GridField& field, const PdeSpec& spec);

struct DampingResult {
    double lambda = 0.0; // decay rate per step of the amplitude envelope
    int points_used = 0;
};

/// Least-squares fit of log A(t) over [50,450) keeping points with A > 1e-6;
/// needs >= 20 usable points.
DampingResult damping_from_amplitude(const std::vector<double>& amplitude);

/// Envelope-amplitude decay of the field's prepared delta signal.
DampingResult damping_estimate(const GridField& field);

struct RegressionResult {
    // estimates in e*u_tt + d*u_t - c*lap(u) + bx*u_x + by*u_y = 0 with the
    // normalized term's coefficient fixed at 1
    double e = 0.0;
    double d = 0.0;
    double c = 0.0;
    double bx = 0.0;
    double by = 0.0;
    std::string normalized_term; // "utt", "ut" or "lap"
    double residual_rel = 0.0;
    double cond = 1.0;
};

/// Least squares over centered finite-difference estimates at interior
/// points/times, after Savitzky-Golay smoothing (window 21, order 3) along
/// time. Degenerate columns are dropped; the leading time-derivative falls
/// back to the Laplacian when its column vanishes.
RegressionResult regress_coefficients(const GridField& field, const TermLabels& term_set,
                                      const PdeSpec& spec);

} // namespace pdeid::coeff
