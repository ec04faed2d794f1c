#include "pdeid/spatial.hpp"

#include <cmath>

#include "pdeid/stats.hpp"

namespace pdeid::spatial {

namespace {

std::vector<double> minmax_scaled(const std::vector<double>& v) {
    const double lo = stats::minimum(v);
    const double hi = stats::maximum(v);
    std::vector<double> out(v.size(), 0.0);
    if (hi > lo) {
        const double inv = 1.0 / (hi - lo);
        for (size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - lo) * inv;
    }
    return out;
}

} // namespace

MarginalProfiles marginal_profiles(const GridField& field, int t) {
    if (t < 0 || t >= field.nt) {
        throw Error(ErrorCode::DimensionMismatch, "marginal_profiles: t out of range");
    }
    MarginalProfiles p;
    p.x_profile.assign(field.nx, 0.0);
    p.y_profile.assign(field.ny, 0.0);
    const double* f = field.frame(t);
    for (int y = 0; y < field.ny; ++y) {
        for (int x = 0; x < field.nx; ++x) {
            const double v = f[static_cast<size_t>(y) * field.nx + x];
            p.x_profile[x] += v;
            p.y_profile[y] += v;
        }
    }
    for (double& v : p.x_profile) v /= static_cast<double>(field.ny);
    for (double& v : p.y_profile) v /= static_cast<double>(field.nx);
    return p;
}

FlowDirection flow_direction(const PdeSpec& spec) {
    FlowDirection dir;
    const double dcx = spec.bc1() - spec.bc4();
    const double dcy = spec.bc2() - spec.bc3();
    const double norm = std::sqrt(dcx * dcx + dcy * dcy);
    if (norm == 0.0) {
        dir.degenerate = true;
        return dir;
    }
    dir.d1 = dcx / norm;
    dir.d2 = dcy / norm;
    return dir;
}

ProjectedProfiles projected_profiles(const GridField& field, const PdeSpec& spec, int t) {
    const MarginalProfiles raw = marginal_profiles(field, t);
    if (raw.x_profile.size() != raw.y_profile.size()) {
        throw Error(ErrorCode::DimensionMismatch, "projection requires a square grid");
    }
    const FlowDirection dir = flow_direction(spec);
    const std::vector<double> ux = minmax_scaled(raw.x_profile);
    const std::vector<double> uy = minmax_scaled(raw.y_profile);
    ProjectedProfiles p;
    p.d1 = dir.d1;
    p.d2 = dir.d2;
    p.v1.resize(ux.size());
    p.v2.resize(ux.size());
    for (size_t g = 0; g < ux.size(); ++g) {
        p.v1[g] = dir.d1 * uy[g] - dir.d2 * ux[g];
        p.v2[g] = dir.d1 * ux[g] + dir.d2 * uy[g];
    }
    return p;
}

std::vector<double> symmetry_signal(const GridField& field, const PdeSpec& spec, int t) {
    const ProjectedProfiles p = projected_profiles(field, spec, t);
    const size_t n = p.v1.size();
    std::vector<double> s(n / 2);
    for (size_t g = 0; g < s.size(); ++g) s[g] = p.v1[g] - p.v1[n - 1 - g];
    return s;
}

std::array<double, 7> spatial_features(const GridField& field, const PdeSpec& spec) {
    const std::vector<double> s = symmetry_signal(field, spec, field.nt - 1);
    std::vector<double> abs_s(s.size());
    for (size_t i = 0; i < s.size(); ++i) abs_s[i] = std::abs(s[i]);
    return {stats::mean(s),      stats::stddev(s),  stats::minimum(s), stats::maximum(s),
            stats::mean(abs_s),  stats::stddev(abs_s), stats::skewness(s)};
}

} // namespace pdeid::spatial
