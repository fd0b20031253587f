#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "lvs/integrator.hpp"
#include "lvs/spectrum.hpp"

namespace lvs {

enum class PointKind {
    saddle,
    stable_node,
    unstable_node,
    stable_vortex_in,
    unstable_vortex_out,
    repelling_planar_attracting_axis,
    attracting_planar_repelling_axis,
    degenerate,
};

// Local character of an equilibrium from its eigenvalue real-part signs and
// whether a conjugate pair is present. The decision table (real parts taken
// with tolerance 1e-10, so a near-zero real part is degenerate):
//
//   any sign 0                          -> degenerate
//   all -            no pair / pair     -> stable_node / stable_vortex_in
//   all +            no pair / pair     -> unstable_node / unstable_vortex_out
//   mixed, pair with Re > 0             -> repelling_planar_attracting_axis
//   mixed, pair with Re < 0             -> attracting_planar_repelling_axis
//   mixed (-,+,+), all real             -> repelling_planar_attracting_axis
//   mixed (+,-,-), all real             -> saddle
struct PointCharacter {
    PointKind kind;
    bool complex_pair;
    std::array<int, 3> signs;  // sign of each eigenvalue's real part: -1, 0, +1
};

PointCharacter classify_point(const Spectrum& spec);

const char* point_kind_name(PointKind k);

// Where a parameter triple sits relative to the chaotic regions: on the
// stable side of B/A = 1, or a candidate with the repeller/attractor sign
// patterns at Ss2/Ss3.
struct RegionReport {
    Params params;
    std::optional<double> ratio;  // B/A, unset when A = 0
    PointCharacter ss2;
    PointCharacter ss3;
    bool chaotic_candidate = false;
    bool stable_side = false;  // B/A <= 1
};

RegionReport chaotic_candidate(const Params& p);

struct LyapunovConfig {
    double t_total = 5000.0;
    double t_renorm = 1.0;
    double t_transient = 500.0;
    double step_size = 1e-3;            // fixed-step backend, for determinism
    Vec3 tangent0 = {1.0, 1.0, 1.0};    // normalized internally

    void validate() const;
};

struct LyapunovEstimate {
    double value = 0.0;       // mean log-growth rate per unit time
    double std_error = 0.0;   // over renormalization windows
    std::size_t windows = 0;
};

// Largest Lyapunov exponent by tangent-space propagation: the variational
// system dv/dt = J(s(t)) v runs alongside the orbit, v is renormalized every
// t_renorm, and log growth is averaged after the transient.
LyapunovEstimate lyapunov_max(const Params& p, const State& s0, const LyapunovConfig& cfg = {});

} // namespace lvs
