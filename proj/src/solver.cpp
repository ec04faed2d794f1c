#include "pdeid/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "pdeid/kernels.hpp"
#include "pdeid/parallel.hpp"

namespace pdeid::solver {

namespace {

double grid_spacing(const PdeSpec& spec) {
    const double hx = spec.domain_len / (spec.nx - 1);
    const double hy = spec.domain_len / (spec.ny - 1);
    if (std::abs(hx - hy) > 1e-12 * spec.domain_len) {
        throw Error(ErrorCode::UsageError, "non-square grid spacing unsupported");
    }
    return hx;
}

// Walls: bc1 at x=0, bc4 at x=nx-1, bc2 at y=0, bc3 at y=ny-1. The y walls
// are applied last, so corners carry the bc2/bc3 values.
void fill_boundary(double* f, const PdeSpec& spec) {
    const int ny = spec.ny;
    const int nx = spec.nx;
    for (int y = 0; y < ny; ++y) {
        f[static_cast<size_t>(y) * nx] = spec.bc1();
        f[static_cast<size_t>(y) * nx + nx - 1] = spec.bc4();
    }
    for (int x = 0; x < nx; ++x) {
        f[x] = spec.bc2();
        f[static_cast<size_t>(ny - 1) * nx + x] = spec.bc3();
    }
}

void fill_initial(double* f, const PdeSpec& spec) {
    for (int y = 0; y < spec.ny; ++y) {
        for (int x = 0; x < spec.nx; ++x) {
            f[static_cast<size_t>(y) * spec.nx + x] = spec.ic;
        }
    }
    fill_boundary(f, spec);
}

void check_finite(const double* f, size_t n, const char* what) {
    for (size_t i = 0; i < n; ++i) {
        if (!std::isfinite(f[i])) {
            throw Error(ErrorCode::NonFinite, std::string(what) + ": state left finite range");
        }
    }
}

} // namespace

int required_substeps(const PdeSpec& spec, const SolverConfig& cfg) {
    const double h = grid_spacing(spec);
    const double maxb = std::max(std::abs(spec.bx), std::abs(spec.by));
    double bound = std::numeric_limits<double>::infinity();
    if (spec.e == 0.0) {
        bound = std::min(bound, cfg.cfl_safety * 0.25 * h * h / spec.c);
    } else {
        bound = std::min(bound, cfg.cfl_safety * h / std::sqrt(spec.c));
    }
    if (maxb > 0.0) bound = std::min(bound, cfg.cfl_safety * h / maxb);
    return std::max(1, static_cast<int>(std::ceil(spec.dt_sim / bound)));
}

GridField simulate(const PdeSpec& spec, const SolverConfig& cfg) {
    if (!spec.time_dependent()) {
        throw Error(ErrorCode::UsageError, "simulate requires (e,d) != (0,0)");
    }
    if (spec.c <= 0.0) throw Error(ErrorCode::UsageError, "simulate requires c > 0");
    const double h = grid_spacing(spec);
    const int n_sub = required_substeps(spec, cfg);
    if (n_sub > cfg.substeps_max) {
        throw Error(ErrorCode::Unstable,
                    "required sub-steps " + std::to_string(n_sub) + " exceed cap " +
                        std::to_string(cfg.substeps_max));
    }
    const double dt = spec.dt_sim / n_sub;
    const auto& k = kernels::active();
    const size_t fs = static_cast<size_t>(spec.ny) * spec.nx;

    GridField field(spec.nt, spec.ny, spec.nx, spec.dt_sim);
    std::vector<double> cur(fs), next(fs), prev(fs);
    fill_initial(cur.data(), spec);
    std::memcpy(field.frame(0), cur.data(), fs * sizeof(double));
    // kernels write the interior only, so boundary values persist in every
    // work buffer once set here
    fill_initial(next.data(), spec);

    if (spec.e == 0.0) {
        // forward Euler, d * u_t = c lap(u) - B.grad(u); d > 0
        const double rd = spec.c * dt / (spec.d * h * h);
        const double rx = spec.bx * dt / (spec.d * h);
        const double ry = spec.by * dt / (spec.d * h);
        const double rxp = std::max(rx, 0.0), rxm = std::min(rx, 0.0);
        const double ryp = std::max(ry, 0.0), rym = std::min(ry, 0.0);
        for (int t = 1; t < spec.nt; ++t) {
            for (int s = 0; s < n_sub; ++s) {
                k.stencil_step(cur.data(), next.data(), spec.ny, spec.nx, rd, rxp, rxm, ryp, rym);
                cur.swap(next);
            }
            check_finite(cur.data(), fs, "simulate");
            std::memcpy(field.frame(t), cur.data(), fs * sizeof(double));
        }
        return field;
    }

    // leapfrog with the damping term handled semi-implicitly
    const double e = spec.e;
    const double rd2 = spec.c * dt * dt / (e * h * h);
    const double rx2 = spec.bx * dt * dt / (e * h);
    const double ry2 = spec.by * dt * dt / (e * h);
    const double rxp2 = std::max(rx2, 0.0), rxm2 = std::min(rx2, 0.0);
    const double ryp2 = std::max(ry2, 0.0), rym2 = std::min(ry2, 0.0);
    const double alpha = spec.d * dt / (2.0 * e);
    const double omb = 1.0 - alpha;
    const double inv1pa = 1.0 / (1.0 + alpha);

    fill_initial(prev.data(), spec);
    // first sub-step from zero initial velocity: u1 = u0 + (dt^2/2) * a0
    bool first = true;
    for (int t = 1; t < spec.nt; ++t) {
        for (int s = 0; s < n_sub; ++s) {
            if (first) {
                k.stencil_step(cur.data(), next.data(), spec.ny, spec.nx, rd2 * 0.5, rxp2 * 0.5,
                               rxm2 * 0.5, ryp2 * 0.5, rym2 * 0.5);
                first = false;
            } else {
                k.wave_step(cur.data(), prev.data(), next.data(), spec.ny, spec.nx, rd2, rxp2,
                            rxm2, ryp2, rym2, omb, inv1pa);
            }
            prev.swap(cur);
            cur.swap(next);
        }
        check_finite(cur.data(), fs, "simulate");
        std::memcpy(field.frame(t), cur.data(), fs * sizeof(double));
    }
    return field;
}

GridField solve_steady(const PdeSpec& spec, const SolverConfig& cfg) {
    if (spec.time_dependent()) {
        throw Error(ErrorCode::UsageError, "solve_steady requires (e,d) = (0,0)");
    }
    if (spec.c <= 0.0) throw Error(ErrorCode::UsageError, "solve_steady requires c > 0");
    const double h = grid_spacing(spec);
    const int ny = spec.ny;
    const int nx = spec.nx;
    const size_t fs = static_cast<size_t>(ny) * nx;
    std::vector<double> u(fs);
    fill_initial(u.data(), spec);

    const double ch2 = spec.c / (h * h);
    const double bxp = std::max(spec.bx, 0.0) / h, bxm = std::min(spec.bx, 0.0) / h;
    const double byp = std::max(spec.by, 0.0) / h, bym = std::min(spec.by, 0.0) / h;
    // neighbor weights of the upwinded operator; diag is their sum
    const double cw = ch2 + bxp;
    const double ce = ch2 - bxm;
    const double cs = ch2 + byp;
    const double cn = ch2 - bym;
    const double diag = cw + ce + cs + cn;
    const bool convective = spec.bx != 0.0 || spec.by != 0.0;
    const double omega = convective ? 1.0 : 1.7;

    double scale_u = std::abs(spec.ic);
    for (double b : spec.bc) scale_u = std::max(scale_u, std::abs(b));
    const double res_scale = diag * std::max(scale_u, 1.0);

    bool converged = false;
    for (int iter = 0; iter < cfg.steady_iter_max; ++iter) {
        for (int y = 1; y < ny - 1; ++y) {
            double* row = u.data() + static_cast<size_t>(y) * nx;
            for (int x = 1; x < nx - 1; ++x) {
                const double gs =
                    (cw * row[x - 1] + ce * row[x + 1] + cs * row[x - nx] + cn * row[x + nx]) /
                    diag;
                row[x] += omega * (gs - row[x]);
            }
        }
        double res = 0.0;
        for (int y = 1; y < ny - 1; ++y) {
            const double* row = u.data() + static_cast<size_t>(y) * nx;
            for (int x = 1; x < nx - 1; ++x) {
                const double r = cw * row[x - 1] + ce * row[x + 1] + cs * row[x - nx] +
                                 cn * row[x + nx] - diag * row[x];
                res = std::max(res, std::abs(r));
            }
        }
        if (res <= cfg.steady_tol * res_scale) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NotConverged, "steady solve hit the iteration cap");
    }

    GridField field(spec.nt, spec.ny, spec.nx, spec.dt_sim);
    for (int t = 0; t < spec.nt; ++t) {
        std::memcpy(field.frame(t), u.data(), fs * sizeof(double));
    }
    return field;
}

GridField solve(const PdeSpec& spec, const SolverConfig& cfg) {
    return spec.time_dependent() ? simulate(spec, cfg) : solve_steady(spec, cfg);
}

namespace {

struct ClassGrid {
    double e;
    std::vector<double> d;
    std::vector<double> c;
    std::vector<double> b;       // values taken by both bx and by; empty means B = 0
    std::vector<double> bc_set;  // values for the three varied walls
    std::array<int, 3> varied;   // indices into bc[4] of the varied walls
    int fixed_wall;              // wall held at the initial value
};

// SI Table S5 rows in class order 1..8. Walls are 0-based bc indices
// (0=BC1, 1=BC2, 2=BC3, 3=BC4); the unlisted wall stays at ic = 0.1.
const ClassGrid& class_grid(int class_id) {
    static const std::vector<double> bc_wide{-4.0, 1.0, 6.0, 11.0};
    static const std::vector<double> bc_narrow{1.0, 6.0};
    static const std::array<ClassGrid, 8> grids{{
        {0.0, {1.0}, {1, 3, 5, 7, 9, 11}, {}, bc_wide, {0, 1, 2}, 3},
        {0.0, {1.0}, {1, 6, 11}, {70, 90, 110, 130}, bc_narrow, {0, 1, 2}, 3},
        {0.0, {0.0}, {1, 3, 5, 7, 9, 11}, {}, bc_wide, {0, 1, 2}, 3},
        {0.0, {0.0}, {5, 8, 11}, {50, 70, 90, 110}, bc_narrow, {1, 2, 3}, 0},
        {1.0, {0.0}, {100, 150, 200, 250, 300, 350}, {}, bc_wide, {0, 1, 2}, 3},
        {1.0, {0.0}, {100, 200, 300}, {700, 900, 1100, 1300}, bc_narrow, {0, 1, 2}, 3},
        {1.0, {200, 300}, {100, 200, 300}, {}, bc_wide, {0, 1, 2}, 3},
        {1.0, {200, 300}, {100, 150, 200, 250, 300, 350}, {900, 1100}, bc_narrow, {1, 2, 3}, 0},
    }};
    if (class_id < 1 || class_id > 8) {
        throw Error(ErrorCode::UsageError, "class id out of range 1..8");
    }
    return grids[class_id - 1];
}

std::string sample_id(int class_id, int seq) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c%d_%03d", class_id, seq);
    return buf;
}

} // namespace

std::vector<EnumeratedSample> enumerate_specs(const std::vector<int>& classes) {
    std::vector<EnumeratedSample> out;
    for (int class_id : classes) {
        const ClassGrid& g = class_grid(class_id);
        const auto bits = bits_from_class(class_id);
        const std::vector<double> b_or_zero = g.b.empty() ? std::vector<double>{0.0} : g.b;
        int seq = 0;
        for (double d : g.d) {
            for (double c : g.c) {
                for (double bx : b_or_zero) {
                    for (double by : b_or_zero) {
                        for (double v0 : g.bc_set) {
                            for (double v1 : g.bc_set) {
                                for (double v2 : g.bc_set) {
                                    EnumeratedSample s;
                                    s.spec.e = g.e;
                                    s.spec.d = d;
                                    s.spec.c = c;
                                    s.spec.bx = bx;
                                    s.spec.by = by;
                                    s.spec.bc = {0.0, 0.0, 0.0, 0.0};
                                    s.spec.bc[g.varied[0]] = v0;
                                    s.spec.bc[g.varied[1]] = v1;
                                    s.spec.bc[g.varied[2]] = v2;
                                    s.spec.bc[g.fixed_wall] = s.spec.ic;
                                    s.labels = labels_from_bits(bits[0], bits[1], bits[2]);
                                    s.id = sample_id(class_id, seq++);
                                    out.push_back(std::move(s));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

Dataset generate_dataset(uint64_t seed, const std::vector<int>& classes, const SolverConfig& cfg,
                         int threads, const SampleSink& sink) {
    const std::vector<EnumeratedSample> specs = enumerate_specs(classes);
    parallel_for(specs.size(), threads, [&](size_t i) {
        const EnumeratedSample& s = specs[i];
        try {
            const GridField raw = solve(s.spec, cfg);
            const NormalizedField norm = normalize_field(raw);
            if (sink) sink(i, s, norm);
        } catch (const Error& e) {
            throw Error(e.code(), "sample " + s.id + ": " + e.what());
        }
    });
    Dataset ds;
    ds.seed = seed;
    ds.samples.reserve(specs.size());
    for (const auto& s : specs) {
        SampleEntry entry;
        entry.id = s.id;
        entry.spec = s.spec;
        entry.labels = s.labels;
        ds.samples.push_back(std::move(entry));
    }
    return ds;
}

} // namespace pdeid::solver
