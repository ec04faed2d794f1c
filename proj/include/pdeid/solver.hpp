#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdeid/core.hpp"

namespace pdeid::solver {

struct SolverConfig {
    int substeps_max = 10000;
    double steady_tol = 1e-12; // residual relative to diagonal scale
    int steady_iter_max = 200000;
    double cfl_safety = 0.45;
};

/// Internal sub-steps per output step needed for explicit stability.
int required_substeps(const PdeSpec& spec, const SolverConfig& cfg);

/// Explicit time stepping of e*u_tt + d*u_t - c*lap(u) + B.grad(u) = 0 with
/// fixed Dirichlet walls: forward Euler with upwind convection when e = 0,
/// leapfrog with semi-implicit damping when e != 0. Interior starts at ic,
/// initial velocity zero.
GridField simulate(const PdeSpec& spec, const SolverConfig& cfg);

/// SOR relaxation of -c*lap(u) + B.grad(u) = 0 (upwind convection); the
/// converged frame is replicated across nt frames.
GridField solve_steady(const PdeSpec& spec, const SolverConfig& cfg);

/// simulate or solve_steady based on (e, d).
GridField solve(const PdeSpec& spec, const SolverConfig& cfg);

struct EnumeratedSample {
    std::string id;
    PdeSpec spec;
    TermLabels labels;
};

/// Full parameter-grid enumeration for the requested classes (1..8),
/// 384 samples each, in deterministic order.
std::vector<EnumeratedSample> enumerate_specs(const std::vector<int>& classes);

/// Called once per generated sample; may run on worker threads but each
/// index is delivered exactly once.
using SampleSink =
    std::function<void(size_t index, const EnumeratedSample&, const NormalizedField&)>;

/// Solve + normalize every enumerated sample, fanning out across threads.
/// Returns the dataset metadata (ids, specs, labels) in enumeration order.
/// Solver failures are rethrown tagged with the offending sample id.
Dataset generate_dataset(uint64_t seed, const std::vector<int>& classes, const SolverConfig& cfg,
                         int threads, const SampleSink& sink);

} // namespace pdeid::solver
