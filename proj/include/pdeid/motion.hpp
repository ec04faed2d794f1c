#pragma once

#include <vector>

#include "pdeid/core.hpp"

namespace pdeid::motion {

/// Per-step mean displacement vectors from 3x3 block matching.
struct MotionField {
    std::vector<double> vx; // x component per step, length nt-1
    std::vector<double> vy; // y component per step
};

/// For each interior point and step, the nonzero offset into the next frame
/// with the nearest value; ties go to the smaller offset norm, then
/// lexicographic (dy, dx). Returns the interior mean offset per step.
MotionField motion_vectors(const GridField& field);

/// Time average of the per-step mean-vector norms.
double motion_magnitude(const MotionField& mv);

} // namespace pdeid::motion
