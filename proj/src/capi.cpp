#include "lvsurgery.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "lvs/analysis.hpp"
#include "lvs/integrator.hpp"
#include "lvs/model.hpp"
#include "lvs/spectrum.hpp"
#include "lvs/topology.hpp"

struct lvs_trajectory {
    std::shared_ptr<const lvs::Trajectory> t;
};

struct lvs_scan_result {
    lvs::SurgeryScanResult r;
    std::vector<lvs_trajectory> trajs;  // parallel to r.entries, for borrowing
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
lvs_status guarded(Fn&& fn) {
    try {
        fn();
        return LVS_OK;
    } catch (const lvs::domain_error& e) {
        g_last_error = e.what();
        return LVS_ERR_DOMAIN;
    } catch (const lvs::overflow_error& e) {
        g_last_error = std::string(e.what()) + " at t=" + std::to_string(e.time);
        return LVS_ERR_OVERFLOW;
    } catch (const lvs::budget_error& e) {
        g_last_error = e.what();
        return LVS_ERR_BUDGET;
    } catch (const lvs::stiffness_error& e) {
        g_last_error = e.what();
        return LVS_ERR_STIFFNESS;
    } catch (const lvs::insufficient_data_error& e) {
        g_last_error = e.what();
        return LVS_ERR_INSUFFICIENT_DATA;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LVS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LVS_ERR_INTERNAL;
    }
}

lvs::Params to_params(lvs_params p) { return lvs::Params(p.a, p.b, p.c); }

lvs::State to_state(const double s[3]) { return lvs::State{s[0], s[1], s[2]}; }

lvs::IntegratorConfig to_cfg(const lvs_integrator_config* c) {
    if (!c) return lvs::IntegratorConfig{};
    lvs::IntegratorConfig cfg;
    cfg.rtol = c->rtol;
    cfg.atol = c->atol;
    cfg.h_init = c->h_init;
    cfg.h_min = c->h_min;
    cfg.h_max = c->h_max;
    cfg.max_steps = c->max_steps;
    cfg.safety = c->safety;
    cfg.divergence_cap = c->divergence_cap;
    return cfg;
}

lvs::BandConfig to_band(const lvs_band_config* b) {
    if (!b) return lvs::BandConfig{};
    lvs::BandConfig band;
    if (!b->axial_auto) {
        band.axial_lo = b->axial_lo;
        band.axial_hi = b->axial_hi;
    }
    if (!b->shell_auto) band.shell_radius = b->shell_radius;
    band.n_bins = b->n_bins;
    band.axial_inset = b->axial_inset;
    return band;
}

void fill_spectrum(const lvs::Spectrum& spec, lvs_spectrum* out) {
    std::memset(out, 0, sizeof(*out));
    for (int i = 0; i < 3; ++i) {
        out->eig_re[i] = spec.values[i].real();
        out->eig_im[i] = spec.values[i].imag();
        if (spec.vectors[i]) {
            out->vec_defined[i] = 1;
            for (int k = 0; k < 3; ++k) {
                out->vec_re[i][k] = (*spec.vectors[i])[k].real();
                out->vec_im[i][k] = (*spec.vectors[i])[k].imag();
            }
        }
    }
    out->source = spec.source == lvs::SpectrumSource::closed_form ? 0 : 1;
}

lvs::Spectrum to_spectrum(const lvs_spectrum* in) {
    lvs::Spectrum spec;
    for (int i = 0; i < 3; ++i) {
        spec.values[i] = lvs::Complex(in->eig_re[i], in->eig_im[i]);
        if (in->vec_defined[i]) {
            lvs::Vec3c v;
            for (int k = 0; k < 3; ++k) v[k] = lvs::Complex(in->vec_re[i][k], in->vec_im[i][k]);
            spec.vectors[i] = v;
        }
    }
    spec.source = in->source == 0 ? lvs::SpectrumSource::closed_form
                                  : lvs::SpectrumSource::numeric;
    return spec;
}

void fill_character(const lvs::PointCharacter& ch, lvs_point_character* out) {
    out->kind = static_cast<int>(ch.kind);
    out->complex_pair = ch.complex_pair ? 1 : 0;
    for (int i = 0; i < 3; ++i) out->signs[i] = ch.signs[i];
}

void fill_metrics(const lvs::HoleMetrics& m, lvs_hole_metrics* out) {
    out->min_distance = m.min_distance;
    out->angular_coverage = m.angular_coverage;
    out->n_samples_in_band = m.n_samples_in_band;
    out->axial_lo = m.axial_lo;
    out->axial_hi = m.axial_hi;
    out->shell_radius = m.shell_radius;
}

static_assert(sizeof(lvs::State) == 3 * sizeof(double));

} // namespace

extern "C" {

const char* lvs_version(void) { return "0.1.0"; }

const char* lvs_last_error(void) { return g_last_error.c_str(); }

void lvs_integrator_config_default(lvs_integrator_config* cfg) {
    const lvs::IntegratorConfig d;
    *cfg = {d.rtol, d.atol, d.h_init, d.h_min, d.h_max, d.max_steps, d.safety, d.divergence_cap};
}

void lvs_lyapunov_config_default(lvs_lyapunov_config* cfg) {
    const lvs::LyapunovConfig d;
    *cfg = {d.t_total, d.t_renorm, d.t_transient, d.step_size,
            {d.tangent0[0], d.tangent0[1], d.tangent0[2]}};
}

void lvs_band_config_default(lvs_band_config* cfg) {
    const lvs::BandConfig d;
    *cfg = {1, 0.0, 0.0, 1, 0.0, d.n_bins, d.axial_inset};
}

void lvs_scan_config_default(lvs_scan_config* cfg) {
    const lvs::ScanConfig d;
    cfg->s0[0] = d.s0.x;
    cfg->s0[1] = d.s0.y;
    cfg->s0[2] = d.s0.z;
    cfg->t_end = d.t_end;
    cfg->transient_fraction = d.transient_fraction;
    lvs_integrator_config_default(&cfg->integ);
    lvs_band_config_default(&cfg->band);
    cfg->eps_hole_auto = 1;
    cfg->eps_hole = 0.0;
    cfg->c_min = d.thresholds.c_min;
    cfg->jobs = d.jobs;
    cfg->keep_trajectories = d.keep_trajectories ? 1 : 0;
}

lvs_status lvs_params_validate(lvs_params p) {
    return guarded([&] { to_params(p); });
}

lvs_status lvs_vector_field(lvs_params p, const double s[3], double out[3]) {
    return guarded([&] {
        const lvs::State f = lvs::vector_field(to_params(p), to_state(s));
        out[0] = f.x;
        out[1] = f.y;
        out[2] = f.z;
    });
}

lvs_status lvs_jacobian(lvs_params p, const double s[3], double out[9]) {
    return guarded([&] {
        const lvs::Mat3 j = lvs::jacobian(to_params(p), to_state(s));
        std::memcpy(out, j.m.data(), 9 * sizeof(double));
    });
}

lvs_status lvs_jacobian_fd(lvs_params p, const double s[3], double h, double out[9]) {
    return guarded([&] {
        const lvs::Mat3 j = lvs::jacobian_fd(to_params(p), to_state(s), h);
        std::memcpy(out, j.m.data(), 9 * sizeof(double));
    });
}

lvs_status lvs_steady_states(lvs_params p, lvs_steady_state out[5]) {
    return guarded([&] {
        const lvs::SteadyStateSet set = lvs::steady_states(to_params(p));
        for (int i = 0; i < 5; ++i) {
            const auto& e = set.entries[static_cast<std::size_t>(i)];
            out[i].label = static_cast<int>(e.label);
            out[i].point[0] = e.point.x;
            out[i].point[1] = e.point.y;
            out[i].point[2] = e.point.z;
            out[i].defined = e.defined ? 1 : 0;
            out[i].admissible = e.admissible ? 1 : 0;
        }
    });
}

lvs_status lvs_spectrum_closed_form(lvs_params p, int label, lvs_spectrum* out) {
    return guarded([&] {
        if (label < 0 || label > 2)
            throw lvs::domain_error("lvs_spectrum_closed_form: label must be Ss1..Ss3");
        fill_spectrum(lvs::spectrum_closed_form(to_params(p),
                                                static_cast<lvs::SteadyStateLabel>(label)),
                      out);
    });
}

lvs_status lvs_spectrum_numeric(lvs_params p, const double s[3], lvs_spectrum* out) {
    return guarded([&] { fill_spectrum(lvs::spectrum_numeric(to_params(p), to_state(s)), out); });
}

lvs_status lvs_slow_manifold(lvs_params p, double base[3], double direction[3]) {
    return guarded([&] {
        const lvs::SlowManifold sm(to_params(p));
        base[0] = sm.base_point().x;
        base[1] = sm.base_point().y;
        base[2] = sm.base_point().z;
        for (int i = 0; i < 3; ++i) direction[i] = sm.direction()[i];
    });
}

lvs_status lvs_slow_manifold_distance(lvs_params p, const double s[3], double* out) {
    return guarded([&] { *out = lvs::SlowManifold(to_params(p)).distance(to_state(s)); });
}

lvs_status lvs_slow_manifold_axial(lvs_params p, const double s[3], double* out) {
    return guarded([&] { *out = lvs::SlowManifold(to_params(p)).axial(to_state(s)); });
}

lvs_status lvs_classify_spectrum(const lvs_spectrum* spec, lvs_point_character* out) {
    return guarded([&] { fill_character(lvs::classify_point(to_spectrum(spec)), out); });
}

lvs_status lvs_region_report_compute(lvs_params p, lvs_region_report* out) {
    return guarded([&] {
        const lvs::RegionReport rep = lvs::chaotic_candidate(to_params(p));
        out->params = p;
        out->ratio_defined = rep.ratio.has_value() ? 1 : 0;
        out->ratio = rep.ratio.value_or(0.0);
        fill_character(rep.ss2, &out->ss2);
        fill_character(rep.ss3, &out->ss3);
        out->chaotic_candidate = rep.chaotic_candidate ? 1 : 0;
        out->stable_side = rep.stable_side ? 1 : 0;
    });
}

lvs_status lvs_lyapunov_max(lvs_params p, const double s0[3], const lvs_lyapunov_config* cfg,
                            double* value, double* std_error) {
    return guarded([&] {
        lvs::LyapunovConfig c;
        if (cfg) {
            c.t_total = cfg->t_total;
            c.t_renorm = cfg->t_renorm;
            c.t_transient = cfg->t_transient;
            c.step_size = cfg->step_size;
            c.tangent0 = {cfg->tangent0[0], cfg->tangent0[1], cfg->tangent0[2]};
        }
        const lvs::LyapunovEstimate est = lvs::lyapunov_max(to_params(p), to_state(s0), c);
        *value = est.value;
        if (std_error) *std_error = est.std_error;
    });
}

const char* lvs_point_kind_name(int kind) {
    if (kind < 0 || kind > static_cast<int>(lvs::PointKind::degenerate)) return "unknown";
    return lvs::point_kind_name(static_cast<lvs::PointKind>(kind));
}

lvs_status lvs_integrate(lvs_params p, const double s0[3], double t_end,
                         const lvs_integrator_config* cfg, lvs_trajectory** out) {
    return guarded([&] {
        auto tr = std::make_shared<lvs::Trajectory>(
            lvs::integrate(to_params(p), to_state(s0), t_end, to_cfg(cfg)));
        *out = new lvs_trajectory{std::move(tr)};
    });
}

lvs_status lvs_integrate_fixed(lvs_params p, const double s0[3], double h, uint64_t n_steps,
                               lvs_trajectory** out) {
    return guarded([&] {
        auto tr = std::make_shared<lvs::Trajectory>(
            lvs::integrate_fixed(to_params(p), to_state(s0), h, n_steps));
        *out = new lvs_trajectory{std::move(tr)};
    });
}

lvs_status lvs_trajectory_discard_transient(const lvs_trajectory* tr, double t_cut,
                                            lvs_trajectory** out) {
    return guarded([&] {
        auto cut = std::make_shared<lvs::Trajectory>(lvs::discard_transient(*tr->t, t_cut));
        *out = new lvs_trajectory{std::move(cut)};
    });
}

size_t lvs_trajectory_size(const lvs_trajectory* tr) { return tr->t->size(); }

const double* lvs_trajectory_times(const lvs_trajectory* tr) { return tr->t->times.data(); }

const double* lvs_trajectory_states(const lvs_trajectory* tr) {
    return reinterpret_cast<const double*>(tr->t->states.data());
}

void lvs_trajectory_stats(const lvs_trajectory* tr, uint64_t* accepted, uint64_t* rejected) {
    if (accepted) *accepted = tr->t->accepted;
    if (rejected) *rejected = tr->t->rejected;
}

void lvs_trajectory_free(lvs_trajectory* tr) { delete tr; }

lvs_status lvs_hole_metrics_compute(const lvs_trajectory* tr, lvs_params p,
                                    const lvs_band_config* band, lvs_hole_metrics* out) {
    return guarded([&] {
        fill_metrics(lvs::hole_metrics(*tr->t, to_params(p), to_band(band)), out);
    });
}

lvs_status lvs_classify_shape(const lvs_hole_metrics* m, double eps_hole, double c_min,
                              int* verdict) {
    return guarded([&] {
        lvs::HoleMetrics hm;
        hm.min_distance = m->min_distance;
        hm.angular_coverage = m->angular_coverage;
        hm.n_samples_in_band = m->n_samples_in_band;
        hm.axial_lo = m->axial_lo;
        hm.axial_hi = m->axial_hi;
        hm.shell_radius = m->shell_radius;
        *verdict = static_cast<int>(lvs::classify_shape(hm, eps_hole, c_min).verdict);
    });
}

lvs_status lvs_surgery_scan(double b, double c, const double* a_values, size_t n,
                            const lvs_scan_config* cfg, lvs_scan_result** out) {
    return guarded([&] {
        lvs::ScanConfig sc;
        if (cfg) {
            sc.s0 = lvs::State{cfg->s0[0], cfg->s0[1], cfg->s0[2]};
            sc.t_end = cfg->t_end;
            sc.transient_fraction = cfg->transient_fraction;
            sc.integ = to_cfg(&cfg->integ);
            sc.band = to_band(&cfg->band);
            if (!cfg->eps_hole_auto) sc.thresholds.eps_hole = cfg->eps_hole;
            sc.thresholds.c_min = cfg->c_min;
            sc.jobs = cfg->jobs;
            sc.keep_trajectories = cfg->keep_trajectories != 0;
        }
        auto res = std::make_unique<lvs_scan_result>();
        res->r = lvs::surgery_scan(b, c, std::span<const double>(a_values, n), sc);
        res->trajs.resize(res->r.entries.size());
        for (std::size_t i = 0; i < res->r.entries.size(); ++i)
            res->trajs[i].t = res->r.entries[i].trajectory;
        *out = res.release();
    });
}

size_t lvs_scan_size(const lvs_scan_result* r) { return r->r.entries.size(); }

lvs_status lvs_scan_entry(const lvs_scan_result* r, size_t i, double* a, int* ok,
                          lvs_hole_metrics* metrics, int* verdict, double* eps_hole) {
    return guarded([&] {
        if (i >= r->r.entries.size()) throw lvs::domain_error("lvs_scan_entry: index out of range");
        const lvs::ScanEntry& e = r->r.entries[i];
        if (a) *a = e.a;
        if (ok) *ok = e.ok ? 1 : 0;
        if (metrics) fill_metrics(e.metrics, metrics);
        if (verdict) *verdict = static_cast<int>(e.shape.verdict);
        if (eps_hole) *eps_hole = e.shape.eps_hole;
    });
}

const char* lvs_scan_entry_error(const lvs_scan_result* r, size_t i) {
    if (i >= r->r.entries.size()) return "";
    return r->r.entries[i].error.c_str();
}

const lvs_trajectory* lvs_scan_entry_trajectory(const lvs_scan_result* r, size_t i) {
    if (i >= r->trajs.size() || !r->trajs[i].t) return nullptr;
    return &r->trajs[i];
}

int64_t lvs_scan_transition_index(const lvs_scan_result* r) {
    if (!r->r.transition_index) return -1;
    return static_cast<int64_t>(*r->r.transition_index);
}

void lvs_scan_result_free(lvs_scan_result* r) { delete r; }

const char* lvs_shape_verdict_name(int verdict) {
    if (verdict < 0 || verdict > 2) return "unknown";
    return lvs::shape_verdict_name(static_cast<lvs::ShapeVerdict>(verdict));
}

} // extern "C"
