#include "lvs/analysis.hpp"

#include <cmath>
#include <vector>

namespace lvs {

namespace {

constexpr double kSignTol = 1e-10;

int real_sign(Complex z) {
    if (std::fabs(z.real()) <= kSignTol) return 0;
    return z.real() > 0.0 ? 1 : -1;
}

bool is_complex(Complex z) {
    return std::fabs(z.imag()) > 1e-12 * (1.0 + std::fabs(z.real()));
}

} // namespace

const char* point_kind_name(PointKind k) {
    switch (k) {
    case PointKind::saddle: return "saddle";
    case PointKind::stable_node: return "stable_node";
    case PointKind::unstable_node: return "unstable_node";
    case PointKind::stable_vortex_in: return "stable_vortex_in";
    case PointKind::unstable_vortex_out: return "unstable_vortex_out";
    case PointKind::repelling_planar_attracting_axis: return "repelling_planar_attracting_axis";
    case PointKind::attracting_planar_repelling_axis: return "attracting_planar_repelling_axis";
    case PointKind::degenerate: return "degenerate";
    }
    return "unknown";
}

PointCharacter classify_point(const Spectrum& spec) {
    PointCharacter ch{};
    ch.complex_pair = false;
    int pair_sign = 0;
    int n_pos = 0, n_neg = 0, n_zero = 0;
    for (int i = 0; i < 3; ++i) {
        ch.signs[i] = real_sign(spec.values[i]);
        if (ch.signs[i] > 0) ++n_pos;
        else if (ch.signs[i] < 0) ++n_neg;
        else ++n_zero;
        if (is_complex(spec.values[i])) {
            ch.complex_pair = true;
            pair_sign = ch.signs[i];
        }
    }

    if (n_zero > 0) {
        ch.kind = PointKind::degenerate;
    } else if (n_neg == 3) {
        ch.kind = ch.complex_pair ? PointKind::stable_vortex_in : PointKind::stable_node;
    } else if (n_pos == 3) {
        ch.kind = ch.complex_pair ? PointKind::unstable_vortex_out : PointKind::unstable_node;
    } else if (ch.complex_pair) {
        ch.kind = pair_sign > 0 ? PointKind::repelling_planar_attracting_axis
                                : PointKind::attracting_planar_repelling_axis;
    } else if (n_pos == 2) {
        // Two real repelling directions span a plane; region-q Ss2 lands here.
        ch.kind = PointKind::repelling_planar_attracting_axis;
    } else {
        ch.kind = PointKind::saddle;
    }
    return ch;
}

RegionReport chaotic_candidate(const Params& p) {
    if (!(p.a() > 0.0)) throw domain_error("chaotic_candidate: requires A > 0");

    RegionReport rep{p, p.ratio(), {}, {}, false, false};
    rep.ss2 = classify_point(spectrum_closed_form(p, SteadyStateLabel::Ss2));
    rep.ss3 = classify_point(spectrum_closed_form(p, SteadyStateLabel::Ss3));
    const double ratio = *rep.ratio;
    rep.stable_side = ratio <= 1.0;

    const bool ss2_pattern = rep.ss2.signs[0] < 0 && rep.ss2.signs[1] > 0 && rep.ss2.signs[2] > 0;
    const bool ss3_pattern = rep.ss3.signs[0] > 0 && rep.ss3.signs[1] < 0 && rep.ss3.signs[2] < 0;
    rep.chaotic_candidate = ratio > 1.0 && ss2_pattern && ss3_pattern;
    return rep;
}

void LyapunovConfig::validate() const {
    if (!(t_renorm > 0.0)) throw domain_error("LyapunovConfig: t_renorm must be positive");
    if (!(t_transient >= 0.0 && t_transient < t_total))
        throw domain_error("LyapunovConfig: need 0 <= t_transient < t_total");
    if (!(step_size > 0.0)) throw domain_error("LyapunovConfig: step_size must be positive");
    if (!(norm(tangent0) > 0.0)) throw domain_error("LyapunovConfig: zero initial tangent");
}

LyapunovEstimate lyapunov_max(const Params& p, const State& s0, const LyapunovConfig& cfg) {
    cfg.validate();
    if (!s0.finite()) throw domain_error("lyapunov_max: non-finite initial state");

    if (!(cfg.step_size <= cfg.t_renorm))
        throw domain_error("lyapunov_max: t_renorm below step_size");

    State s = s0;
    Vec3 v = cfg.tangent0;
    {
        const double n = norm(v);
        for (auto& c : v) c /= n;
    }

    // One RK4 step of the coupled (state, tangent) system.
    auto rhs = [&](const State& st, const Vec3& tv, State& ds, Vec3& dv) {
        ds = vector_field(p, st);
        dv = jacobian(p, st).apply(tv);
    };
    auto rk4 = [&](State& st, Vec3& tv, double h) {
        State ks1, ks2, ks3, ks4;
        Vec3 kv1, kv2, kv3, kv4;
        rhs(st, tv, ks1, kv1);
        rhs({st.x + 0.5 * h * ks1.x, st.y + 0.5 * h * ks1.y, st.z + 0.5 * h * ks1.z},
            {tv[0] + 0.5 * h * kv1[0], tv[1] + 0.5 * h * kv1[1], tv[2] + 0.5 * h * kv1[2]},
            ks2, kv2);
        rhs({st.x + 0.5 * h * ks2.x, st.y + 0.5 * h * ks2.y, st.z + 0.5 * h * ks2.z},
            {tv[0] + 0.5 * h * kv2[0], tv[1] + 0.5 * h * kv2[1], tv[2] + 0.5 * h * kv2[2]},
            ks3, kv3);
        rhs({st.x + h * ks3.x, st.y + h * ks3.y, st.z + h * ks3.z},
            {tv[0] + h * kv3[0], tv[1] + h * kv3[1], tv[2] + h * kv3[2]}, ks4, kv4);
        st = {st.x + h / 6.0 * (ks1.x + 2.0 * ks2.x + 2.0 * ks3.x + ks4.x),
              st.y + h / 6.0 * (ks1.y + 2.0 * ks2.y + 2.0 * ks3.y + ks4.y),
              st.z + h / 6.0 * (ks1.z + 2.0 * ks2.z + 2.0 * ks3.z + ks4.z)};
        for (int i = 0; i < 3; ++i)
            tv[i] += h / 6.0 * (kv1[i] + 2.0 * kv2[i] + 2.0 * kv3[i] + kv4[i]);
        if (!st.finite())
            throw overflow_error("lyapunov_max: orbit became non-finite", 0.0);
    };

    const auto n_windows = static_cast<std::uint64_t>(std::ceil(cfg.t_total / cfg.t_renorm));
    std::vector<double> rates;
    rates.reserve(n_windows);
    double t = 0.0;
    for (std::uint64_t w = 0; w < n_windows; ++w) {
        const double window_end = static_cast<double>(w + 1) * cfg.t_renorm;
        while (t < window_end - 1e-12 * cfg.t_renorm) {
            // Stability-limited step: transient excursions can push ||J||
            // far beyond the attractor scale, where the nominal step blows
            // an explicit method up.
            const double h_stab = 0.25 / std::max(1.0, jacobian(p, s).norm_inf());
            const double h = std::min({cfg.step_size, h_stab, window_end - t});
            rk4(s, v, h);
            t += h;
        }
        t = window_end;
        const double growth = norm(v);
        if (!(growth > 0.0) || !std::isfinite(growth))
            throw overflow_error("lyapunov_max: tangent collapsed or overflowed", t);
        for (auto& c : v) c /= growth;
        if (t > cfg.t_transient) rates.push_back(std::log(growth) / cfg.t_renorm);
    }

    LyapunovEstimate est;
    est.windows = rates.size();
    if (rates.empty()) return est;
    double mean = 0.0;
    for (double r : rates) mean += r;
    mean /= static_cast<double>(rates.size());
    double var = 0.0;
    for (double r : rates) var += (r - mean) * (r - mean);
    if (rates.size() > 1) var /= static_cast<double>(rates.size() - 1);
    est.value = mean;
    est.std_error = std::sqrt(var / static_cast<double>(rates.size()));
    return est;
}

} // namespace lvs
