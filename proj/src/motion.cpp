#include "pdeid/motion.hpp"

#include <cmath>

#include "pdeid/kernels.hpp"

namespace pdeid::motion {

MotionField motion_vectors(const GridField& field) {
    if (field.ny < 3 || field.nx < 3 || field.nt < 2) {
        throw Error(ErrorCode::DimensionMismatch, "motion_vectors needs ny,nx >= 3 and nt >= 2");
    }
    const auto& k = kernels::active();
    MotionField mv;
    mv.vx.resize(field.nt - 1);
    mv.vy.resize(field.nt - 1);
    const double inv = 1.0 / (static_cast<double>(field.ny - 2) * (field.nx - 2));
    for (int t = 0; t + 1 < field.nt; ++t) {
        double sx = 0.0;
        double sy = 0.0;
        k.block_match(field.frame(t), field.frame(t + 1), field.ny, field.nx, &sx, &sy);
        mv.vx[t] = sx * inv;
        mv.vy[t] = sy * inv;
    }
    return mv;
}

double motion_magnitude(const MotionField& mv) {
    if (mv.vx.empty()) return 0.0;
    double acc = 0.0;
    for (size_t t = 0; t < mv.vx.size(); ++t) {
        acc += std::sqrt(mv.vx[t] * mv.vx[t] + mv.vy[t] * mv.vy[t]);
    }
    return acc / static_cast<double>(mv.vx.size());
}

} // namespace pdeid::motion
