#pragma once

#include <cstdint>
#include <vector>

#include "lvs/model.hpp"

namespace lvs {

struct IntegratorConfig {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-12;
    double h_max = 1.0;
    std::uint64_t max_steps = 100000000;
    double safety = 0.9;

    // Accepted states with ||s||_inf beyond this abort the run: the dynamics
    // is provably bounded in the positive octant, so a breach means the
    // numerics failed, not the model.
    double divergence_cap = 1e4;

    void validate() const;
};

struct StepResult {
    State state5;            // 5th-order solution
    State state4;            // embedded 4th-order solution
    double error_estimate;   // weighted max-norm of (state5 - state4); accept when <= 1
};

// One embedded Dormand-Prince 5(4) step of size h from s.
StepResult step(const Params& p, const State& s, double h, const IntegratorConfig& cfg = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    Params params;
    IntegratorConfig config;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;

    std::size_t size() const { return times.size(); }
};

// Adaptive integration from s0 over [0, t_end]; every accepted step is
// recorded and the final step is truncated to land on t_end exactly.
Trajectory integrate(const Params& p, const State& s0, double t_end,
                     const IntegratorConfig& cfg = {});

// Classical fixed-step 4-stage integration, bit-reproducible on a platform.
Trajectory integrate_fixed(const Params& p, const State& s0, double h, std::uint64_t n_steps);

// Samples with t >= t_cut, metadata preserved. t_cut past the final time is
// an insufficient_data_error.
Trajectory discard_transient(const Trajectory& tr, double t_cut);

} // namespace lvs
