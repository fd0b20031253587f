#include "lvs/topology.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace lvs {

const char* shape_verdict_name(ShapeVerdict v) {
    switch (v) {
    case ShapeVerdict::closed: return "closed";
    case ShapeVerdict::open: return "open";
    case ShapeVerdict::indeterminate: return "indeterminate";
    }
    return "unknown";
}

HoleMetrics hole_metrics(const Trajectory& tr, const Params& p, const BandConfig& band) {
    if (tr.states.empty()) throw insufficient_data_error("hole_metrics: empty trajectory");
    if (band.n_bins <= 0) throw domain_error("hole_metrics: n_bins must be positive");
    if (!(band.axial_inset >= 0.0 && band.axial_inset < 0.5))
        throw domain_error("hole_metrics: axial_inset must be in [0, 0.5)");

    const SlowManifold sm(p);

    HoleMetrics m;
    if (band.axial_lo && band.axial_hi) {
        m.axial_lo = *band.axial_lo;
        m.axial_hi = *band.axial_hi;
    } else {
        // Default window: the axial span between Ss2 and Ss3, inset on each end.
        const auto ss = steady_states(p);
        if (!ss[SteadyStateLabel::Ss3].defined)
            throw domain_error("hole_metrics: default band needs Ss3 (A > 0 and B > 0)");
        const double a2 = sm.axial(ss[SteadyStateLabel::Ss2].point);
        const double a3 = sm.axial(ss[SteadyStateLabel::Ss3].point);
        const double lo = std::min(a2, a3), hi = std::max(a2, a3);
        const double inset = band.axial_inset * (hi - lo);
        m.axial_lo = lo + inset;
        m.axial_hi = hi - inset;
    }
    if (!(m.axial_lo < m.axial_hi)) throw domain_error("hole_metrics: empty axial window");

    std::vector<double> dist;
    std::vector<const State*> in_window;
    dist.reserve(tr.states.size());
    for (const auto& s : tr.states) {
        const double ax = sm.axial(s);
        if (ax < m.axial_lo || ax > m.axial_hi) continue;
        in_window.push_back(&s);
        dist.push_back(sm.distance(s));
    }
    if (in_window.empty())
        throw insufficient_data_error("hole_metrics: no samples in the axial window");

    if (band.shell_radius) {
        m.shell_radius = *band.shell_radius;
    } else {
        std::vector<double> d = dist;
        auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
        std::nth_element(d.begin(), mid, d.end());
        m.shell_radius = 5.0 * *mid;
    }

    // Angle frame normal to L's direction.
    const Vec3& dir = sm.direction();
    Vec3 seed = std::fabs(dir[0]) <= std::fabs(dir[1]) && std::fabs(dir[0]) <= std::fabs(dir[2])
                    ? Vec3{1.0, 0.0, 0.0}
                    : (std::fabs(dir[1]) <= std::fabs(dir[2]) ? Vec3{0.0, 1.0, 0.0}
                                                              : Vec3{0.0, 0.0, 1.0});
    Vec3 u = cross(dir, seed);
    const double un = norm(u);
    for (auto& c : u) c /= un;
    const Vec3 w = cross(dir, u);

    std::vector<char> occupied(static_cast<std::size_t>(band.n_bins), 0);
    const State& base = sm.base_point();
    m.min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < in_window.size(); ++i) {
        if (dist[i] > m.shell_radius) continue;
        ++m.n_samples_in_band;
        m.min_distance = std::min(m.min_distance, dist[i]);
        const State& s = *in_window[i];
        const Vec3 d{s.x - base.x, s.y - base.y, s.z - base.z};
        const double angle = std::atan2(dot(d, w), dot(d, u));
        auto bin = static_cast<long>(std::floor((angle + M_PI) / (2.0 * M_PI) *
                                                static_cast<double>(band.n_bins)));
        bin = std::clamp(bin, 0L, static_cast<long>(band.n_bins) - 1);
        occupied[static_cast<std::size_t>(bin)] = 1;
    }
    if (m.n_samples_in_band == 0)
        throw insufficient_data_error("hole_metrics: no samples inside the shell");

    std::size_t hit = 0;
    for (char o : occupied) hit += o;
    m.angular_coverage = static_cast<double>(hit) / static_cast<double>(band.n_bins);
    return m;
}

ShapeClass classify_shape(const HoleMetrics& m, double eps_hole, double c_min) {
    if (!(eps_hole > 0.0)) throw domain_error("classify_shape: eps_hole must be positive");
    if (!(c_min > 0.0 && c_min <= 1.0)) throw domain_error("classify_shape: c_min must be in (0,1]");

    ShapeClass sc{ShapeVerdict::indeterminate, eps_hole, c_min};
    if (m.angular_coverage >= c_min)
        sc.verdict = m.min_distance > eps_hole ? ShapeVerdict::open : ShapeVerdict::closed;
    return sc;
}

namespace {

double bbox_diagonal(const std::vector<State>& states) {
    State lo = states.front(), hi = states.front();
    for (const auto& s : states) {
        lo = {std::min(lo.x, s.x), std::min(lo.y, s.y), std::min(lo.z, s.z)};
        hi = {std::max(hi.x, s.x), std::max(hi.y, s.y), std::max(hi.z, s.z)};
    }
    const Vec3 d{hi.x - lo.x, hi.y - lo.y, hi.z - lo.z};
    return norm(d);
}

ScanEntry scan_one(double a, double b, double c, const ScanConfig& cfg) {
    ScanEntry e;
    e.a = a;
    try {
        const Params p(a, b, c);
        Trajectory full = integrate(p, cfg.s0, cfg.t_end, cfg.integ);
        Trajectory tail = discard_transient(full, cfg.transient_fraction * cfg.t_end);
        e.metrics = hole_metrics(tail, p, cfg.band);
        const double eps = cfg.thresholds.eps_hole
                               ? *cfg.thresholds.eps_hole
                               : 0.02 * bbox_diagonal(tail.states);
        e.shape = classify_shape(e.metrics, eps, cfg.thresholds.c_min);
        if (cfg.keep_trajectories)
            e.trajectory = std::make_shared<Trajectory>(std::move(tail));
        e.ok = true;
    } catch (const std::exception& ex) {
        e.ok = false;
        e.error = ex.what();
    }
    return e;
}

} // namespace

SurgeryScanResult surgery_scan(double b, double c, std::span<const double> a_values,
                               const ScanConfig& cfg) {
    for (std::size_t i = 0; i + 1 < a_values.size(); ++i)
        if (!(a_values[i] < a_values[i + 1]))
            throw domain_error("surgery_scan: a_values must be strictly increasing");

    SurgeryScanResult res;
    res.b = b;
    res.c = c;
    res.entries.resize(a_values.size());

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1 || a_values.size() <= 1) {
        for (std::size_t i = 0; i < a_values.size(); ++i)
            res.entries[i] = scan_one(a_values[i], b, c, cfg);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= a_values.size()) return;
                res.entries[i] = scan_one(a_values[i], b, c, cfg);
            }
        };
        std::vector<std::thread> pool;
        const auto n = std::min<std::size_t>(static_cast<std::size_t>(jobs), a_values.size());
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < res.entries.size(); ++i) {
        if (res.entries[i].ok && res.entries[i].shape.verdict == ShapeVerdict::open) {
            res.transition_index = i;
            break;
        }
    }
    return res;
}

} // namespace lvs
