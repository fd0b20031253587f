#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lvs/analysis.hpp"

using namespace lvs;

namespace {

Spectrum make_spectrum(Complex a, Complex b, Complex c) {
    Spectrum sp;
    sp.values = {a, b, c};
    return sp;
}

} // namespace

TEST_CASE("classification decision table") {
    using K = PointKind;
    CHECK(classify_point(make_spectrum(-1, -2, -3)).kind == K::stable_node);
    CHECK(classify_point(make_spectrum(1, 2, 3)).kind == K::unstable_node);
    CHECK(classify_point(make_spectrum(-1, {-2, 1}, {-2, -1})).kind == K::stable_vortex_in);
    CHECK(classify_point(make_spectrum(1, {2, 1}, {2, -1})).kind == K::unstable_vortex_out);
    CHECK(classify_point(make_spectrum(-1, {2, 1}, {2, -1})).kind ==
          K::repelling_planar_attracting_axis);
    CHECK(classify_point(make_spectrum(1, {-2, 1}, {-2, -1})).kind ==
          K::attracting_planar_repelling_axis);
    CHECK(classify_point(make_spectrum(-1, 2, 3)).kind == K::repelling_planar_attracting_axis);
    CHECK(classify_point(make_spectrum(1, -2, -3)).kind == K::saddle);
    CHECK(classify_point(make_spectrum(0.0, -1, 1)).kind == K::degenerate);
    CHECK(classify_point(make_spectrum(1e-11, -1, 1)).kind == K::degenerate);
}

TEST_CASE("classification is scale invariant") {
    const auto base = make_spectrum(-1, {2, 1}, {2, -1});
    for (double s : {1e-3, 1.0, 1e3}) {
        const auto scaled = make_spectrum(Complex(-1) * s, Complex(2, 1) * s, Complex(2, -1) * s);
        CHECK(classify_point(scaled).kind == classify_point(base).kind);
    }
}

TEST_CASE("region report at the reference parameter points") {
    const auto q = chaotic_candidate(Params(0.01305, 0.0145, 5.5));
    CHECK(q.chaotic_candidate);
    CHECK_FALSE(q.stable_side);
    CHECK(*q.ratio == doctest::Approx(0.0145 / 0.01305));
    // Ss2 repels in a plane and attracts along an axis; Ss3 the reverse.
    CHECK(q.ss2.signs == std::array<int, 3>{-1, 1, 1});
    CHECK(q.ss3.signs == std::array<int, 3>{1, -1, -1});

    const auto stable = chaotic_candidate(Params(0.029, 0.0145, 5.5));
    CHECK_FALSE(stable.chaotic_candidate);
    CHECK(stable.stable_side);

    CHECK_THROWS_AS(chaotic_candidate(Params(0.0, 0.0145, 5.5)), domain_error);
}

TEST_CASE("lyapunov config validation") {
    LyapunovConfig cfg;
    cfg.t_renorm = 0.0;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.t_transient = cfg.t_total;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.tangent0 = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.step_size = 2.0 * cfg.t_renorm;
    CHECK_THROWS_AS(lyapunov_max(Params(0.1, 0.1, 0.1), {0.5, 1, 2}, cfg), domain_error);
}

TEST_CASE("lyapunov exponent on the X = 0 plane matches the linear rates") {
    // In-plane dynamics is Y' = -Y, Z' = -BZ; an in-plane tangent converges to
    // the slower rate -B.
    const Params p(0.1, 0.0145, 5.5);
    LyapunovConfig cfg;
    cfg.t_total = 300.0;
    cfg.t_transient = 50.0;
    cfg.tangent0 = {0.0, 1.0, 1.0};
    const auto est = lyapunov_max(p, {0.0, 1.0, 2.0}, cfg);
    CHECK(est.windows == 250);
    CHECK(std::fabs(est.value - (-0.0145)) <= 1e-3);

    // A generic tangent picks up the unstable off-plane direction, rate
    // 1 - Y(t) -> 1.
    cfg.tangent0 = {1.0, 1.0, 1.0};
    const auto off = lyapunov_max(p, {0.0, 1.0, 2.0}, cfg);
    CHECK(std::fabs(off.value - 1.0) <= 1e-3);
}
