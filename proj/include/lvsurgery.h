/* C API for the three-species Lotka-Volterra surgery toolkit.
 *
 * All functions return an lvs_status; outputs go through pointers. Handles
 * (lvs_trajectory, lvs_scan_result) are opaque and must be released with the
 * matching *_free call. lvs_last_error() returns a thread-local message for
 * the most recent failure on the calling thread.
 */
#ifndef LVSURGERY_H
#define LVSURGERY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LVS_API __declspec(dllexport)
#else
#define LVS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvs_status {
    LVS_OK = 0,
    LVS_ERR_DOMAIN = 1,            /* invalid argument / undefined formula */
    LVS_ERR_OVERFLOW = 2,          /* non-finite state or left expected region */
    LVS_ERR_BUDGET = 3,            /* max_steps exhausted */
    LVS_ERR_STIFFNESS = 4,         /* step size underflow */
    LVS_ERR_INSUFFICIENT_DATA = 5, /* empty band / empty result */
    LVS_ERR_INTERNAL = 6
} lvs_status;

typedef struct lvs_params {
    double a, b, c;
} lvs_params;

typedef enum lvs_steady_label {
    LVS_SS1 = 0,
    LVS_SS2 = 1,
    LVS_SS3 = 2,
    LVS_SS4 = 3,
    LVS_SS5 = 4
} lvs_steady_label;

typedef struct lvs_steady_state {
    int label;          /* lvs_steady_label */
    double point[3];    /* meaningful only when defined */
    int defined;
    int admissible;
} lvs_steady_state;

typedef struct lvs_spectrum {
    double eig_re[3];
    double eig_im[3];
    double vec_re[3][3]; /* vec_re[i] is the eigenvector of eigenvalue i */
    double vec_im[3][3];
    int vec_defined[3];
    int source;          /* 0 closed form, 1 numeric */
} lvs_spectrum;

typedef enum lvs_point_kind {
    LVS_KIND_SADDLE = 0,
    LVS_KIND_STABLE_NODE,
    LVS_KIND_UNSTABLE_NODE,
    LVS_KIND_STABLE_VORTEX_IN,
    LVS_KIND_UNSTABLE_VORTEX_OUT,
    LVS_KIND_REPELLING_PLANAR_ATTRACTING_AXIS,
    LVS_KIND_ATTRACTING_PLANAR_REPELLING_AXIS,
    LVS_KIND_DEGENERATE
} lvs_point_kind;

typedef struct lvs_point_character {
    int kind;          /* lvs_point_kind */
    int complex_pair;
    int signs[3];      /* -1, 0, +1 per eigenvalue real part */
} lvs_point_character;

typedef struct lvs_region_report {
    lvs_params params;
    int ratio_defined;
    double ratio;      /* B/A when defined */
    lvs_point_character ss2;
    lvs_point_character ss3;
    int chaotic_candidate;
    int stable_side;
} lvs_region_report;

typedef struct lvs_integrator_config {
    double rtol;
    double atol;
    double h_init;
    double h_min;
    double h_max;
    uint64_t max_steps;
    double safety;
    double divergence_cap;
} lvs_integrator_config;

typedef struct lvs_lyapunov_config {
    double t_total;
    double t_renorm;
    double t_transient;
    double step_size;
    double tangent0[3];
} lvs_lyapunov_config;

typedef struct lvs_band_config {
    int axial_auto;      /* nonzero: derive the window from the Ss2-Ss3 span */
    double axial_lo;
    double axial_hi;
    int shell_auto;      /* nonzero: 5x median in-band distance */
    double shell_radius;
    int n_bins;
    double axial_inset;
} lvs_band_config;

typedef struct lvs_hole_metrics {
    double min_distance;
    double angular_coverage;
    uint64_t n_samples_in_band;
    double axial_lo;
    double axial_hi;
    double shell_radius;
} lvs_hole_metrics;

typedef enum lvs_shape_verdict {
    LVS_SHAPE_CLOSED = 0,
    LVS_SHAPE_OPEN = 1,
    LVS_SHAPE_INDETERMINATE = 2
} lvs_shape_verdict;

typedef struct lvs_scan_config {
    double s0[3];
    double t_end;
    double transient_fraction;
    lvs_integrator_config integ;
    lvs_band_config band;
    int eps_hole_auto;   /* nonzero: 0.02 x attractor bounding-box diagonal */
    double eps_hole;
    double c_min;
    int jobs;
    int keep_trajectories;
} lvs_scan_config;

typedef struct lvs_trajectory lvs_trajectory;
typedef struct lvs_scan_result lvs_scan_result;

LVS_API const char* lvs_version(void);

/* Thread-local message for the last failing call on this thread. */
LVS_API const char* lvs_last_error(void);

/* Fill a config with the library defaults. */
LVS_API void lvs_integrator_config_default(lvs_integrator_config* cfg);
LVS_API void lvs_lyapunov_config_default(lvs_lyapunov_config* cfg);
LVS_API void lvs_band_config_default(lvs_band_config* cfg);
LVS_API void lvs_scan_config_default(lvs_scan_config* cfg);

LVS_API lvs_status lvs_params_validate(lvs_params p);

/* ---- model ---- */

LVS_API lvs_status lvs_vector_field(lvs_params p, const double s[3], double out[3]);
LVS_API lvs_status lvs_jacobian(lvs_params p, const double s[3], double out[9]); /* row-major */
LVS_API lvs_status lvs_jacobian_fd(lvs_params p, const double s[3], double h, double out[9]);
LVS_API lvs_status lvs_steady_states(lvs_params p, lvs_steady_state out[5]);
LVS_API lvs_status lvs_spectrum_closed_form(lvs_params p, int label, lvs_spectrum* out);
LVS_API lvs_status lvs_spectrum_numeric(lvs_params p, const double s[3], lvs_spectrum* out);
LVS_API lvs_status lvs_slow_manifold(lvs_params p, double base[3], double direction[3]);
LVS_API lvs_status lvs_slow_manifold_distance(lvs_params p, const double s[3], double* out);
LVS_API lvs_status lvs_slow_manifold_axial(lvs_params p, const double s[3], double* out);

/* ---- analysis ---- */

LVS_API lvs_status lvs_classify_spectrum(const lvs_spectrum* spec, lvs_point_character* out);
LVS_API lvs_status lvs_region_report_compute(lvs_params p, lvs_region_report* out);
LVS_API lvs_status lvs_lyapunov_max(lvs_params p, const double s0[3],
                                    const lvs_lyapunov_config* cfg, double* value,
                                    double* std_error);
LVS_API const char* lvs_point_kind_name(int kind);

/* ---- integrator ---- */

LVS_API lvs_status lvs_integrate(lvs_params p, const double s0[3], double t_end,
                                 const lvs_integrator_config* cfg, lvs_trajectory** out);
LVS_API lvs_status lvs_integrate_fixed(lvs_params p, const double s0[3], double h,
                                       uint64_t n_steps, lvs_trajectory** out);
LVS_API lvs_status lvs_trajectory_discard_transient(const lvs_trajectory* tr, double t_cut,
                                                    lvs_trajectory** out);
LVS_API size_t lvs_trajectory_size(const lvs_trajectory* tr);
/* Borrowed views, valid while the trajectory lives. States are packed x,y,z. */
LVS_API const double* lvs_trajectory_times(const lvs_trajectory* tr);
LVS_API const double* lvs_trajectory_states(const lvs_trajectory* tr);
LVS_API void lvs_trajectory_stats(const lvs_trajectory* tr, uint64_t* accepted,
                                  uint64_t* rejected);
LVS_API void lvs_trajectory_free(lvs_trajectory* tr);

/* ---- topology ---- */

LVS_API lvs_status lvs_hole_metrics_compute(const lvs_trajectory* tr, lvs_params p,
                                            const lvs_band_config* band, lvs_hole_metrics* out);
LVS_API lvs_status lvs_classify_shape(const lvs_hole_metrics* m, double eps_hole, double c_min,
                                      int* verdict);
LVS_API lvs_status lvs_surgery_scan(double b, double c, const double* a_values, size_t n,
                                    const lvs_scan_config* cfg, lvs_scan_result** out);
LVS_API size_t lvs_scan_size(const lvs_scan_result* r);
/* entry_ok: 1 when the entry succeeded; error text via lvs_scan_entry_error. */
LVS_API lvs_status lvs_scan_entry(const lvs_scan_result* r, size_t i, double* a, int* ok,
                                  lvs_hole_metrics* metrics, int* verdict, double* eps_hole);
LVS_API const char* lvs_scan_entry_error(const lvs_scan_result* r, size_t i);
/* Borrowed, NULL when the scan did not keep trajectories. */
LVS_API const lvs_trajectory* lvs_scan_entry_trajectory(const lvs_scan_result* r, size_t i);
/* -1 when no entry was classified open. */
LVS_API int64_t lvs_scan_transition_index(const lvs_scan_result* r);
LVS_API void lvs_scan_result_free(lvs_scan_result* r);

LVS_API const char* lvs_shape_verdict_name(int verdict);

#ifdef __cplusplus
}
#endif

#endif /* LVSURGERY_H */
