#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "lvsurgery.h"

namespace {
const lvs_params kQ{0.01305, 0.0145, 5.5};
}

TEST_CASE("version and parameter validation") {
    CHECK(std::strlen(lvs_version()) > 0);
    CHECK(lvs_params_validate(kQ) == LVS_OK);
    CHECK(lvs_params_validate({-1.0, 0.1, 0.1}) == LVS_ERR_DOMAIN);
    CHECK(std::strlen(lvs_last_error()) > 0);
}

TEST_CASE("model surface") {
    double f[3];
    const double s[3] = {1.0, 1.0, 1.0};
    REQUIRE(lvs_vector_field(kQ, s, f) == LVS_OK);
    CHECK(f[0] == doctest::Approx(5.5 - 0.01305));
    CHECK(f[1] == 0.0);

    double j[9], jfd[9];
    REQUIRE(lvs_jacobian(kQ, s, j) == LVS_OK);
    REQUIRE(lvs_jacobian_fd(kQ, s, 1e-6, jfd) == LVS_OK);
    for (int k = 0; k < 9; ++k) CHECK(std::fabs(j[k] - jfd[k]) <= 1e-5);

    lvs_steady_state ss[5];
    REQUIRE(lvs_steady_states(kQ, ss) == LVS_OK);
    CHECK(ss[LVS_SS2].defined);
    CHECK(ss[LVS_SS2].admissible);
    CHECK(ss[LVS_SS2].point[1] == 6.5);
    CHECK_FALSE(ss[LVS_SS4].admissible);

    double residual[3];
    REQUIRE(lvs_vector_field(kQ, ss[LVS_SS3].point, residual) == LVS_OK);
    for (double r : residual) CHECK(std::fabs(r) <= 1e-10);

    double base[3], dir[3], dist = -1.0, axial = 0.0;
    REQUIRE(lvs_slow_manifold(kQ, base, dir) == LVS_OK);
    CHECK(base[0] == 1.0);
    REQUIRE(lvs_slow_manifold_distance(kQ, base, &dist) == LVS_OK);
    CHECK(dist == 0.0);
    REQUIRE(lvs_slow_manifold_axial(kQ, base, &axial) == LVS_OK);
    CHECK(axial == 0.0);
    CHECK(lvs_slow_manifold({0.0, 0.1, 1.0}, base, dir) == LVS_ERR_DOMAIN);
}

TEST_CASE("spectra and classification") {
    lvs_spectrum closed{}, numeric{};
    REQUIRE(lvs_spectrum_closed_form(kQ, LVS_SS1, &closed) == LVS_OK);
    const double origin[3] = {0.0, 0.0, 0.0};
    REQUIRE(lvs_spectrum_numeric(kQ, origin, &numeric) == LVS_OK);
    // Both hold {1, -1, -B} in some order.
    double sum_c = 0.0, sum_n = 0.0;
    for (int i = 0; i < 3; ++i) {
        sum_c += closed.eig_re[i];
        sum_n += numeric.eig_re[i];
        CHECK(closed.eig_im[i] == 0.0);
    }
    CHECK(sum_c == doctest::Approx(-0.0145));
    CHECK(sum_n == doctest::Approx(-0.0145));

    lvs_point_character ch{};
    REQUIRE(lvs_classify_spectrum(&closed, &ch) == LVS_OK);
    CHECK(ch.kind == LVS_KIND_SADDLE);
    CHECK(std::string(lvs_point_kind_name(ch.kind)) == "saddle");

    lvs_region_report rep{};
    REQUIRE(lvs_region_report_compute(kQ, &rep) == LVS_OK);
    CHECK(rep.chaotic_candidate);
    CHECK_FALSE(rep.stable_side);
    CHECK(rep.ratio_defined);
    CHECK(lvs_region_report_compute({0.0, 0.1, 1.0}, &rep) == LVS_ERR_DOMAIN);
}

TEST_CASE("integration handles and views") {
    lvs_integrator_config cfg{};
    lvs_integrator_config_default(&cfg);
    CHECK(cfg.rtol > 0.0);

    const double s0[3] = {0.0, 2.0, 3.0};
    lvs_trajectory* tr = nullptr;
    REQUIRE(lvs_integrate(kQ, s0, 10.0, &cfg, &tr) == LVS_OK);
    const size_t n = lvs_trajectory_size(tr);
    REQUIRE(n > 2);
    const double* times = lvs_trajectory_times(tr);
    const double* states = lvs_trajectory_states(tr);
    CHECK(times[0] == 0.0);
    CHECK(times[n - 1] == 10.0);
    CHECK(states[0] == 0.0);
    CHECK(std::fabs(states[3 * (n - 1) + 1] - 2.0 * std::exp(-10.0)) <= 1e-7);
    uint64_t accepted = 0, rejected = 0;
    lvs_trajectory_stats(tr, &accepted, &rejected);
    CHECK(accepted == n - 1);

    lvs_trajectory* tail = nullptr;
    REQUIRE(lvs_trajectory_discard_transient(tr, 5.0, &tail) == LVS_OK);
    CHECK(lvs_trajectory_times(tail)[0] >= 5.0);
    CHECK(lvs_trajectory_discard_transient(tr, 99.0, &tail) == LVS_ERR_INSUFFICIENT_DATA);
    lvs_trajectory_free(tail);
    lvs_trajectory_free(tr);

    lvs_trajectory* fx = nullptr;
    REQUIRE(lvs_integrate_fixed(kQ, s0, 0.01, 100, &fx) == LVS_OK);
    CHECK(lvs_trajectory_size(fx) == 101);
    lvs_trajectory_free(fx);

    const double bad[3] = {0.5, 1.0, 2.0};
    CHECK(lvs_integrate_fixed(kQ, bad, 0.01, 5000, &fx) == LVS_ERR_OVERFLOW);
    CHECK(std::string(lvs_last_error()).find("t=") != std::string::npos);
}

TEST_CASE("lyapunov through the C API") {
    lvs_lyapunov_config cfg{};
    lvs_lyapunov_config_default(&cfg);
    cfg.t_total = 200.0;
    cfg.t_transient = 20.0;
    cfg.tangent0[0] = 0.0;  // in-plane tangent on X = 0
    const double s0[3] = {0.0, 1.0, 2.0};
    double value = 0.0, se = -1.0;
    REQUIRE(lvs_lyapunov_max(kQ, s0, &cfg, &value, &se) == LVS_OK);
    CHECK(std::fabs(value - (-0.0145)) <= 1e-3);
    CHECK(se >= 0.0);
}

TEST_CASE("hole metrics and scan through the C API") {
    lvs_band_config band{};
    lvs_band_config_default(&band);
    CHECK(band.axial_auto);
    CHECK(band.n_bins == 64);

    // A short X = 0 run decays toward the origin, far from the band around
    // the Ss2-Ss3 segment: expect an insufficient-data failure, not garbage.
    lvs_integrator_config icfg{};
    lvs_integrator_config_default(&icfg);
    const double s0[3] = {0.0, 2.0, 3.0};
    lvs_trajectory* tr = nullptr;
    REQUIRE(lvs_integrate(kQ, s0, 5.0, &icfg, &tr) == LVS_OK);
    lvs_hole_metrics m{};
    CHECK(lvs_hole_metrics_compute(tr, kQ, &band, &m) == LVS_ERR_INSUFFICIENT_DATA);
    lvs_trajectory_free(tr);

    lvs_hole_metrics ring{};
    ring.min_distance = 2.0;
    ring.angular_coverage = 1.0;
    int verdict = -1;
    REQUIRE(lvs_classify_shape(&ring, 0.05, 0.9, &verdict) == LVS_OK);
    CHECK(verdict == LVS_SHAPE_OPEN);
    CHECK(std::string(lvs_shape_verdict_name(verdict)) == "open");

    lvs_scan_config scfg{};
    lvs_scan_config_default(&scfg);
    CHECK(scfg.t_end > 0.0);
    scfg.t_end = 20.0;  // deliberately too short: entries fail, scan survives
    scfg.transient_fraction = 0.5;
    scfg.jobs = 2;
    scfg.keep_trajectories = 1;
    const double a_values[2] = {0.0, 0.01305};
    lvs_scan_result* res = nullptr;
    REQUIRE(lvs_surgery_scan(0.0145, 5.5, a_values, 2, &scfg, &res) == LVS_OK);
    REQUIRE(lvs_scan_size(res) == 2);
    double a = 0.0, eps = 0.0;
    int ok = 1;
    REQUIRE(lvs_scan_entry(res, 0, &a, &ok, &m, &verdict, &eps) == LVS_OK);
    CHECK(a == 0.0);
    CHECK_FALSE(ok);
    CHECK(std::strlen(lvs_scan_entry_error(res, 0)) > 0);
    CHECK(lvs_scan_transition_index(res) == -1);
    lvs_scan_result_free(res);
}
