#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lvs/model.hpp"
#include "lvs/spectrum.hpp"

using namespace lvs;

namespace {

std::mt19937_64 rng(77);

double draw_positive() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return std::pow(10.0, -3.0 + 4.0 * u(rng));
}

void check_match(const Spectrum& a, const Spectrum& b, double tol) {
    const auto sa = a.sorted();
    const auto sb = b.sorted();
    for (int i = 0; i < 3; ++i) {
        const double scale = std::max(1.0, std::abs(sa[i]));
        CHECK(std::abs(sa[i] - sb[i]) <= tol * scale);
    }
}

} // namespace

TEST_CASE("Ss1 spectrum is {1, -1, -B} with coordinate eigenvectors") {
    const Params p(0.01305, 0.0145, 5.5);
    const auto sp = spectrum_closed_form(p, SteadyStateLabel::Ss1);
    const auto v = sp.sorted();
    CHECK(v[0] == Complex(-1.0, 0.0));
    CHECK(v[1] == Complex(-0.0145, 0.0));
    CHECK(v[2] == Complex(1.0, 0.0));

    const Mat3 j = jacobian(p, {0.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i) {
        REQUIRE(sp.vectors[i].has_value());
        CHECK(eigen_residual(j, sp.values[i], *sp.vectors[i]) <= 1e-12);
    }
}

TEST_CASE("closed form agrees with the cubic eigen-oracle") {
    const auto labels = {SteadyStateLabel::Ss1, SteadyStateLabel::Ss2, SteadyStateLabel::Ss3};
    for (int i = 0; i < 200; ++i) {
        const Params p(draw_positive(), draw_positive(), draw_positive());
        const auto set = steady_states(p);
        for (auto label : labels) {
            if (!set[label].defined) continue;
            check_match(spectrum_closed_form(p, label), spectrum_numeric(p, set[label].point),
                        1e-7);
        }
    }
}

TEST_CASE("C = 0 gives the pure imaginary pair at Ss2") {
    const Params p(0.2, 0.1, 0.0);
    const auto v = spectrum_closed_form(p, SteadyStateLabel::Ss2).sorted();
    // (C +- sqrt((C-2)^2 - 8))/2 at C=0 is +-i; the real eigenvalue is A - B.
    CHECK(std::abs(v[0] - Complex(0.0, -1.0)) <= 1e-12);
    CHECK(std::abs(v[1] - Complex(0.0, 1.0)) <= 1e-12);
    CHECK(std::abs(v[2] - Complex(0.1, 0.0)) <= 1e-12);
}

TEST_CASE("Ss2 pair has real part C/2 whenever (C-2)^2 < 8") {
    for (double c : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 4.7}) {
        const Params p(0.3, 0.2, c);
        const auto sp = spectrum_closed_form(p, SteadyStateLabel::Ss2);
        int pair = 0;
        for (const auto& z : sp.values)
            if (z.imag() != 0.0) {
                ++pair;
                CHECK(z.real() == doctest::Approx(c / 2.0).epsilon(1e-14));
            }
        CHECK(pair == 2);
    }
}

TEST_CASE("B = A puts a zero eigenvalue at Ss3") {
    const Params p(0.0145, 0.0145, 5.5);
    const auto sp = spectrum_closed_form(p, SteadyStateLabel::Ss3);
    double closest = 1e300;
    for (const auto& z : sp.values) closest = std::min(closest, std::abs(z));
    CHECK(closest <= 1e-14);
}

TEST_CASE("Ss3 spectrum requires A > 0") {
    CHECK_THROWS_AS(spectrum_closed_form(Params(0.0, 0.1, 1.0), SteadyStateLabel::Ss3),
                    domain_error);
}

TEST_CASE("eigenvectors satisfy the eigen equation") {
    for (int i = 0; i < 100; ++i) {
        const Params p(draw_positive(), draw_positive(), draw_positive());
        const auto set = steady_states(p);
        for (auto label : {SteadyStateLabel::Ss1, SteadyStateLabel::Ss2, SteadyStateLabel::Ss3}) {
            if (!set[label].defined) continue;
            const Mat3 j = jacobian(p, set[label].point);
            const auto sp = spectrum_closed_form(p, label);
            for (int k = 0; k < 3; ++k) {
                if (!sp.vectors[k]) continue;
                CHECK(eigen_residual(j, sp.values[k], *sp.vectors[k]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("conjugate pairing in the numeric oracle") {
    // The cubic solver must return exact conjugates, not independently rounded
    // roots. C = 3 puts (C-2)^2 < 8, so Ss2 carries a complex pair.
    const Params p(0.3, 0.2, 3.0);
    const auto sp = spectrum_numeric(p, steady_states(p)[SteadyStateLabel::Ss2].point);
    Complex a{}, b{};
    int found = 0;
    for (const auto& z : sp.values)
        if (z.imag() != 0.0) (found++ ? b : a) = z;
    REQUIRE(found == 2);
    CHECK(a == std::conj(b));
}

TEST_CASE("solve_cubic on factored polynomials") {
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    auto r = solve_cubic(-6.0, 11.0, -6.0);
    std::sort(r.begin(), r.end(),
              [](Complex u, Complex v) { return u.real() < v.real(); });
    CHECK(std::abs(r[0] - 1.0) <= 1e-12);
    CHECK(std::abs(r[1] - 2.0) <= 1e-12);
    CHECK(std::abs(r[2] - 3.0) <= 1e-12);

    // (x+2)(x^2 + 1) = x^3 + 2x^2 + x + 2
    r = solve_cubic(2.0, 1.0, 2.0);
    int pair = 0;
    for (const auto& z : r) {
        if (z.imag() != 0.0) {
            ++pair;
            CHECK(std::abs(z - Complex(0.0, z.imag() > 0 ? 1.0 : -1.0)) <= 1e-12);
        } else {
            CHECK(std::abs(z + 2.0) <= 1e-12);
        }
    }
    CHECK(pair == 2);
}
