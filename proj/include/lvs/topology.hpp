#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvs/analysis.hpp"
#include "lvs/integrator.hpp"

namespace lvs {

// Where to look for the hole: an axial window along the slow manifold and a
// radial shell around it. Unset fields are derived from the data: the axial
// window spans the Ss2-Ss3 segment inset by `axial_inset` on each end, and
// the shell radius is five times the median in-band distance.
struct BandConfig {
    std::optional<double> axial_lo;
    std::optional<double> axial_hi;
    std::optional<double> shell_radius;
    int n_bins = 64;
    double axial_inset = 0.10;
};

struct HoleMetrics {
    double min_distance = 0.0;       // smallest point-to-L distance among in-band samples
    double angular_coverage = 0.0;   // occupied fraction of angle bins around L
    std::size_t n_samples_in_band = 0;
    double axial_lo = 0.0;
    double axial_hi = 0.0;
    double shell_radius = 0.0;
};

// Distance-to-L and angular-winding statistics of a (post-transient)
// trajectory inside the band. Zero in-band samples is an
// insufficient_data_error, not a verdict.
HoleMetrics hole_metrics(const Trajectory& tr, const Params& p, const BandConfig& band = {});

enum class ShapeVerdict { closed, open, indeterminate };

struct ShapeClass {
    ShapeVerdict verdict = ShapeVerdict::indeterminate;
    double eps_hole = 0.0;
    double c_min = 0.0;
};

const char* shape_verdict_name(ShapeVerdict v);

// open:   the orbit winds around L (coverage >= c_min) and stays clear of it
// closed: the orbit winds around L but comes arbitrarily close
// otherwise indeterminate (no winding, nothing to say about a hole)
ShapeClass classify_shape(const HoleMetrics& m, double eps_hole, double c_min);

struct ScanThresholds {
    std::optional<double> eps_hole;  // default: 0.02 x attractor bounding-box diagonal
    double c_min = 0.9;
};

// The scan horizon is long because the default interior start can spend
// upwards of 12000 time units in a predator-Y-extinct excursion before the
// three-species attractor captures it.
struct ScanConfig {
    State s0{0.5, 1.0, 2.0};
    double t_end = 30000.0;
    double transient_fraction = 0.6;
    IntegratorConfig integ{};
    BandConfig band{};
    ScanThresholds thresholds{};
    int jobs = 1;
    bool keep_trajectories = false;
};

struct ScanEntry {
    double a = 0.0;
    bool ok = false;
    std::string error;  // set when !ok
    HoleMetrics metrics{};
    ShapeClass shape{};
    std::shared_ptr<const Trajectory> trajectory;  // post-transient, when kept
};

struct SurgeryScanResult {
    double b = 0.0;
    double c = 0.0;
    std::vector<ScanEntry> entries;
    std::optional<std::size_t> transition_index;  // first entry classified open
};

// For each A in turn: integrate from the default interior start, drop the
// transient, measure the hole. Per-A failures are recorded in the entry and
// the scan continues.
SurgeryScanResult surgery_scan(double b, double c, std::span<const double> a_values,
                               const ScanConfig& cfg = {});

} // namespace lvs
