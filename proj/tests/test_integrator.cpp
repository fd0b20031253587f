#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lvs/integrator.hpp"

using namespace lvs;

namespace {

// On the invariant plane X = 0 the system decouples into Y' = -Y, Z' = -BZ.
double plane_error(const Trajectory& tr, double y0, double z0, double b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double t = tr.times[i];
        worst = std::max(worst, std::fabs(tr.states[i].y - y0 * std::exp(-t)));
        worst = std::max(worst, std::fabs(tr.states[i].z - z0 * std::exp(-b * t)));
    }
    return worst;
}

} // namespace

TEST_CASE("config validation") {
    IntegratorConfig cfg;
    cfg.rtol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    cfg = {};
    cfg.h_min = 1.0;
    cfg.h_init = 1e-3;
    CHECK_THROWS_AS(cfg.validate(), domain_error);
    CHECK_THROWS_AS(integrate(Params(0.1, 0.1, 0.1), {std::nan(""), 0, 0}, 1.0), domain_error);
    CHECK_THROWS_AS(integrate(Params(0.1, 0.1, 0.1), {1, 1, 1}, 0.0), domain_error);
}

TEST_CASE("exact solution on the X = 0 plane") {
    const Params p(0.01305, 0.0145, 5.5);
    const State s0{0.0, 2.0, 3.0};

    auto tr = integrate(p, s0, 1.0);
    const auto& s1 = tr.states.back();
    CHECK(std::fabs(s1.y - 2.0 * std::exp(-1.0)) <= 1e-8);
    CHECK(std::fabs(s1.z - 3.0 * std::exp(-0.0145)) <= 1e-8);
    CHECK(s1.x == 0.0);

    tr = integrate(p, s0, 20.0);
    const auto& s20 = tr.states.back();
    CHECK(std::fabs(s20.y - 2.0 * std::exp(-20.0)) <= 1e-6);
    CHECK(std::fabs(s20.z - 3.0 * std::exp(-0.29)) <= 1e-6);
}

TEST_CASE("tighter tolerance gives a closer answer") {
    const Params p(0.01305, 0.0145, 5.5);
    const State s0{0.0, 2.0, 3.0};
    IntegratorConfig loose, tight;
    loose.rtol = 1e-4;
    loose.atol = 1e-7;
    tight.rtol = 1e-12;
    tight.atol = 1e-14;
    const double e_loose = plane_error(integrate(p, s0, 10.0, loose), 2.0, 3.0, 0.0145);
    const double e_tight = plane_error(integrate(p, s0, 10.0, tight), 2.0, 3.0, 0.0145);
    CHECK(e_tight < e_loose);
    CHECK(e_tight <= 1e-9);
}

TEST_CASE("trajectory bookkeeping") {
    const Params p(0.01305, 0.0145, 5.5);
    const auto tr = integrate(p, {0.5, 1.0, 2.0}, 7.25);
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == 7.25);  // final step truncated onto t_end
    CHECK(tr.size() == tr.accepted + 1);
    for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.times[i] > tr.times[i - 1]);
}

TEST_CASE("adaptive and fixed backends agree on a benign orbit") {
    // A = C = 0 is the classical conservative predator-prey cycle in (X, Y).
    const Params p(0.0, 0.0145, 0.0);
    const State s0{0.5, 1.0, 2.0};
    IntegratorConfig cfg;
    cfg.rtol = 1e-11;
    cfg.atol = 1e-13;
    const auto ad = integrate(p, s0, 50.0, cfg);
    const auto fx = integrate_fixed(p, s0, 1e-3, 50000);
    CHECK(fx.times.back() == doctest::Approx(50.0).epsilon(1e-12));
    const auto& a = ad.states.back();
    const auto& f = fx.states.back();
    CHECK(std::fabs(a.x - f.x) <= 1e-6);
    CHECK(std::fabs(a.y - f.y) <= 1e-6);
    CHECK(std::fabs(a.z - f.z) <= 1e-6);
}

TEST_CASE("single step error estimate") {
    const Params p(0.01305, 0.0145, 5.5);
    const auto r = step(p, {0.5, 1.0, 2.0}, 1e-4);
    CHECK(r.error_estimate <= 1.0);
    CHECK(std::fabs(r.state5.x - r.state4.x) <= 1e-10);
}

TEST_CASE("failure modes carry the right exception") {
    const Params p(0.01305, 0.0145, 5.5);

    // The early fast excursion overflows a coarse fixed step.
    CHECK_THROWS_AS(integrate_fixed(p, {0.5, 1.0, 2.0}, 0.01, 5000), overflow_error);
    try {
        integrate_fixed(p, {0.5, 1.0, 2.0}, 0.01, 5000);
    } catch (const overflow_error& e) {
        CHECK(e.time > 0.0);
    }

    IntegratorConfig tiny;
    tiny.max_steps = 10;
    CHECK_THROWS_AS(integrate(p, {0.5, 1.0, 2.0}, 1000.0, tiny), budget_error);

    IntegratorConfig capped;
    capped.divergence_cap = 100.0;  // the orbit provably exceeds this early on
    CHECK_THROWS_AS(integrate(p, {0.5, 1.0, 2.0}, 10.0, capped), overflow_error);
}

TEST_CASE("discard_transient keeps the tail and the metadata") {
    const Params p(0.01305, 0.0145, 5.5);
    const auto tr = integrate(p, {0.0, 2.0, 3.0}, 10.0);
    const auto tail = discard_transient(tr, 4.0);
    CHECK(tail.size() > 0);
    for (double t : tail.times) CHECK(t >= 4.0);
    CHECK(tail.times.back() == tr.times.back());
    CHECK(tail.accepted == tr.accepted);

    CHECK_THROWS_AS(discard_transient(tr, 10.0), insufficient_data_error);
    CHECK_THROWS_AS(discard_transient(tr, 11.0), insufficient_data_error);
    CHECK_THROWS_AS(discard_transient(tr, -1.0), domain_error);
}
