#include "lvs/integrator.hpp"

#include <cmath>

namespace lvs {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

State axpy(const State& s, double h, const State& d) {
    return {s.x + h * d.x, s.y + h * d.y, s.z + h * d.z};
}

State eval(const Params& p, const State& s) {
    if (!s.finite()) throw overflow_error("integrator: non-finite stage state", 0.0);
    return vector_field(p, s);
}

} // namespace

void IntegratorConfig::validate() const {
    if (!(rtol > 0.0 && atol > 0.0)) throw domain_error("IntegratorConfig: tolerances must be positive");
    if (!(h_min > 0.0 && h_min <= h_init && h_init <= h_max))
        throw domain_error("IntegratorConfig: need 0 < h_min <= h_init <= h_max");
    if (!(safety > 0.0 && safety < 1.0)) throw domain_error("IntegratorConfig: safety must be in (0,1)");
    if (max_steps == 0) throw domain_error("IntegratorConfig: max_steps must be positive");
}

StepResult step(const Params& p, const State& s, double h, const IntegratorConfig& cfg) {
    if (!(h > 0.0)) throw domain_error("step: h must be positive");
    if (!s.finite()) throw domain_error("step: non-finite state");

    const State k1 = eval(p, s);
    const State k2 = eval(p, axpy(s, h * a21, k1));
    const State k3 = eval(p, {s.x + h * (a31 * k1.x + a32 * k2.x),
                              s.y + h * (a31 * k1.y + a32 * k2.y),
                              s.z + h * (a31 * k1.z + a32 * k2.z)});
    const State k4 = eval(p, {s.x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
                              s.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y),
                              s.z + h * (a41 * k1.z + a42 * k2.z + a43 * k3.z)});
    const State k5 = eval(p, {s.x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                              s.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y),
                              s.z + h * (a51 * k1.z + a52 * k2.z + a53 * k3.z + a54 * k4.z)});
    const State k6 = eval(p, {s.x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x + a65 * k5.x),
                              s.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y),
                              s.z + h * (a61 * k1.z + a62 * k2.z + a63 * k3.z + a64 * k4.z + a65 * k5.z)});

    const State y5{s.x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x),
                   s.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y),
                   s.z + h * (b1 * k1.z + b3 * k3.z + b4 * k4.z + b5 * k5.z + b6 * k6.z)};
    const State k7 = eval(p, y5);

    const State err{h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x),
                    h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y),
                    h * (e1 * k1.z + e3 * k3.z + e4 * k4.z + e5 * k5.z + e6 * k6.z + e7 * k7.z)};
    const State y4{y5.x - err.x, y5.y - err.y, y5.z - err.z};
    if (!y5.finite()) throw overflow_error("step: non-finite result", 0.0);

    auto weighted = [&](double e, double a, double b) {
        return std::fabs(e) / (cfg.atol + cfg.rtol * std::max(std::fabs(a), std::fabs(b)));
    };
    const double est = std::max({weighted(err.x, s.x, y5.x), weighted(err.y, s.y, y5.y),
                                 weighted(err.z, s.z, y5.z)});
    return {y5, y4, est};
}

Trajectory integrate(const Params& p, const State& s0, double t_end, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!s0.finite()) throw domain_error("integrate: non-finite initial state");
    if (!(t_end > 0.0)) throw domain_error("integrate: t_end must be positive");

    Trajectory tr{{}, {}, p, cfg};
    tr.times.push_back(0.0);
    tr.states.push_back(s0);

    double t = 0.0;
    State s = s0;
    double h = std::clamp(cfg.h_init, cfg.h_min, cfg.h_max);

    while (t < t_end) {
        const bool truncated = h > t_end - t;
        const double h_try = truncated ? t_end - t : h;

        StepResult r;
        try {
            r = step(p, s, h_try, cfg);
        } catch (const overflow_error&) {
            throw overflow_error("integrate: overflow", t);
        }

        if (r.error_estimate <= 1.0) {
            t = truncated ? t_end : t + h_try;
            s = r.state5;
            tr.times.push_back(t);
            tr.states.push_back(s);
            ++tr.accepted;
            if (s.norm_inf() > cfg.divergence_cap)
                throw overflow_error("integrate: trajectory left expected region", t);
        } else {
            ++tr.rejected;
            if (h_try <= cfg.h_min)
                throw stiffness_error("integrate: step size underflow (h_min reached)");
        }

        const double factor =
            std::clamp(cfg.safety * std::pow(std::max(r.error_estimate, 1e-300), -0.2), 0.2, 5.0);
        h = std::clamp(h_try * factor, cfg.h_min, cfg.h_max);

        if (tr.accepted + tr.rejected >= cfg.max_steps && t < t_end)
            throw budget_error("integrate: max_steps exceeded");
    }
    return tr;
}

Trajectory integrate_fixed(const Params& p, const State& s0, double h, std::uint64_t n_steps) {
    if (!(h > 0.0)) throw domain_error("integrate_fixed: h must be positive");
    if (n_steps == 0) throw domain_error("integrate_fixed: n_steps must be positive");
    if (!s0.finite()) throw domain_error("integrate_fixed: non-finite initial state");

    Trajectory tr{{}, {}, p, IntegratorConfig{}};
    tr.times.reserve(n_steps + 1);
    tr.states.reserve(n_steps + 1);
    tr.times.push_back(0.0);
    tr.states.push_back(s0);

    State s = s0;
    for (std::uint64_t i = 1; i <= n_steps; ++i) {
        State k1, k2, k3, k4;
        try {
            k1 = eval(p, s);
            k2 = eval(p, axpy(s, 0.5 * h, k1));
            k3 = eval(p, axpy(s, 0.5 * h, k2));
            k4 = eval(p, axpy(s, h, k3));
        } catch (const overflow_error&) {
            throw overflow_error("integrate_fixed: non-finite state",
                                 static_cast<double>(i - 1) * h);
        }
        s = {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
             s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
             s.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)};
        if (!s.finite())
            throw overflow_error("integrate_fixed: non-finite state", static_cast<double>(i) * h);
        tr.times.push_back(static_cast<double>(i) * h);
        tr.states.push_back(s);
        ++tr.accepted;
    }
    return tr;
}

Trajectory discard_transient(const Trajectory& tr, double t_cut) {
    if (t_cut < 0.0) throw domain_error("discard_transient: t_cut must be nonnegative");
    if (tr.times.empty() || t_cut >= tr.times.back())
        throw insufficient_data_error("discard_transient: t_cut past the end of the trajectory");

    Trajectory out{{}, {}, tr.params, tr.config};
    out.accepted = tr.accepted;
    out.rejected = tr.rejected;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (tr.times[i] >= t_cut) {
            out.times.push_back(tr.times[i]);
            out.states.push_back(tr.states[i]);
        }
    }
    return out;
}

} // namespace lvs
