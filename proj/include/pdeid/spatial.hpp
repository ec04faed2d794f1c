#pragma once

#include <array>
#include <vector>

#include "pdeid/core.hpp"

namespace pdeid::spatial {

/// Mean-value profiles of one frame: x_profile[i] averages over y at column i,
/// y_profile[j] averages over x at row j.
struct MarginalProfiles {
    std::vector<double> x_profile;
    std::vector<double> y_profile;
};

/// Boundary-difference flow direction (d1, d2) = dC / |dC| with
/// dC = (bc1 - bc4, bc2 - bc3); degenerate when all walls balance.
struct FlowDirection {
    double d1 = 1.0;
    double d2 = 0.0;
    bool degenerate = false;
};

MarginalProfiles marginal_profiles(const GridField& field, int t);

FlowDirection flow_direction(const PdeSpec& spec);

/// Profiles projected onto the flow frame: v1 is the perpendicular
/// projection, v2 the parallel one. Profiles are min-max normalized first.
struct ProjectedProfiles {
    std::vector<double> v1;
    std::vector<double> v2;
    double d1 = 1.0;
    double d2 = 0.0;
};

ProjectedProfiles projected_profiles(const GridField& field, const PdeSpec& spec, int t);

/// Half-profile minus mirrored half of v1: S[g] = v1[g] - v1[n-1-g] for the
/// first half of the axis.
std::vector<double> symmetry_signal(const GridField& field, const PdeSpec& spec, int t);

/// Statistics of S at the final frame:
/// [mean, std, min, max, mean|S|, std|S|, skew].
std::array<double, 7> spatial_features(const GridField& field, const PdeSpec& spec);

} // namespace pdeid::spatial
