#include "lvs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lvs {

namespace {

constexpr double kRealSnapTol = 1e-12;
constexpr double kResidualTol = 1e-8;

double cnorm(const Vec3c& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

Vec3c ccross(const Vec3c& a, const Vec3c& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Null vector of (J - lambda I) by the largest pairwise row cross product.
std::optional<Vec3c> null_vector(const Mat3& j, Complex lambda) {
    Vec3c rows[3];
    double scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) rows[i][k] = Complex(j(i, k), 0.0) - (i == k ? lambda : 0.0);
        scale = std::max(scale, cnorm(rows[i]));
    }
    Vec3c best{};
    double best_norm = -1.0;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& pr : pairs) {
        Vec3c c = ccross(rows[pr[0]], rows[pr[1]]);
        const double n = cnorm(c);
        if (n > best_norm) {
            best_norm = n;
            best = c;
        }
    }
    if (!(best_norm > 1e-13 * (scale * scale + 1.0))) return std::nullopt;
    for (auto& c : best) c /= best_norm;
    return best;
}

// Verify-or-repair: keep the candidate if its residual passes, otherwise try
// the numeric null vector, otherwise leave the slot unset.
std::optional<Vec3c> checked_vector(const Mat3& j, Complex lambda,
                                    const std::optional<Vec3c>& candidate) {
    if (candidate && eigen_residual(j, lambda, *candidate) <= kResidualTol) return candidate;
    auto nv = null_vector(j, lambda);
    if (nv && eigen_residual(j, lambda, *nv) <= kResidualTol) return nv;
    return std::nullopt;
}

} // namespace

Complex snap_real(Complex z) {
    if (std::fabs(z.imag()) <= kRealSnapTol * (1.0 + std::fabs(z.real())))
        return Complex(z.real(), 0.0);
    return z;
}

std::array<Complex, 3> Spectrum::sorted() const {
    std::array<Complex, 3> out = values;
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

double eigen_residual(const Mat3& j, Complex lambda, const Vec3c& v) {
    const double vn = cnorm(v);
    if (vn == 0.0) return std::numeric_limits<double>::infinity();
    Vec3c r{};
    for (int i = 0; i < 3; ++i) {
        Complex s(0.0, 0.0);
        for (int k = 0; k < 3; ++k) s += j(i, k) * v[k];
        r[i] = s - lambda * v[i];
    }
    return cnorm(r) / (std::max(1.0, j.norm_inf()) * vn);
}

std::array<Complex, 3> solve_cubic(double a2, double a1, double a0) {
    const double q = (a2 * a2 - 3.0 * a1) / 9.0;
    const double r = (2.0 * a2 * a2 * a2 - 9.0 * a2 * a1 + 27.0 * a0) / 54.0;
    const double shift = a2 / 3.0;
    std::array<Complex, 3> roots;
    if (r * r < q * q * q) {
        // Three real roots, trigonometric branch.
        const double theta = std::acos(std::clamp(r / std::sqrt(q * q * q), -1.0, 1.0));
        const double m = -2.0 * std::sqrt(q);
        roots[0] = m * std::cos(theta / 3.0) - shift;
        roots[1] = m * std::cos((theta + 2.0 * M_PI) / 3.0) - shift;
        roots[2] = m * std::cos((theta - 2.0 * M_PI) / 3.0) - shift;
    } else {
        const double big = -std::copysign(std::cbrt(std::fabs(r) + std::sqrt(r * r - q * q * q)),
                                          r);
        const double small = big == 0.0 ? 0.0 : q / big;
        roots[0] = (big + small) - shift;
        const double re = -0.5 * (big + small) - shift;
        const double im = 0.5 * std::sqrt(3.0) * (big - small);
        roots[1] = snap_real(Complex(re, im));
        roots[2] = std::conj(roots[1]);
    }
    return roots;
}

Spectrum spectrum_numeric(const Params& p, const State& s) {
    const Mat3 j = jacobian(p, s);
    const double tr = j(0, 0) + j(1, 1) + j(2, 2);
    const double minors = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0) +
                          j(0, 0) * j(2, 2) - j(0, 2) * j(2, 0) +
                          j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1);
    const double det = j(0, 0) * (j(1, 1) * j(2, 2) - j(1, 2) * j(2, 1)) -
                       j(0, 1) * (j(1, 0) * j(2, 2) - j(1, 2) * j(2, 0)) +
                       j(0, 2) * (j(1, 0) * j(2, 1) - j(1, 1) * j(2, 0));

    Spectrum spec;
    spec.source = SpectrumSource::numeric;
    spec.values = solve_cubic(-tr, minors, -det);
    for (auto& v : spec.values) v = snap_real(v);
    for (int i = 0; i < 3; ++i) {
        auto nv = null_vector(j, spec.values[i]);
        if (nv && eigen_residual(j, spec.values[i], *nv) <= kResidualTol)
            spec.vectors[i] = nv;
    }
    return spec;
}

Spectrum spectrum_closed_form(const Params& p, SteadyStateLabel label) {
    const double a = p.a(), b = p.b(), c = p.c();
    Spectrum spec;
    spec.source = SpectrumSource::closed_form;

    switch (label) {
    case SteadyStateLabel::Ss1: {
        spec.values = {Complex(1.0), Complex(-1.0), Complex(-b)};
        spec.vectors[0] = Vec3c{Complex(1.0), Complex(0.0), Complex(0.0)};
        spec.vectors[1] = Vec3c{Complex(0.0), Complex(1.0), Complex(0.0)};
        spec.vectors[2] = Vec3c{Complex(0.0), Complex(0.0), Complex(1.0)};
        return spec;
    }
    case SteadyStateLabel::Ss2: {
        const Complex root = std::sqrt(Complex((c - 2.0) * (c - 2.0) - 8.0, 0.0));
        spec.values[0] = Complex(a - b);
        spec.values[1] = snap_real((Complex(c) + root) / 2.0);
        spec.values[2] = snap_real((Complex(c) - root) / 2.0);
        if (spec.values[1].imag() != 0.0) spec.values[2] = std::conj(spec.values[1]);

        const Mat3 j = jacobian(p, State{1.0, 1.0 + c, 0.0});
        std::optional<Vec3c> v1;
        if (a != b && a > 0.0) {
            v1 = Vec3c{Complex(1.0), Complex((c + 1.0) / (a - b)),
                       Complex((b + c - a + (c + 1.0) / (b - a)) / a)};
        }
        spec.vectors[0] = checked_vector(j, spec.values[0], v1);
        spec.vectors[1] = checked_vector(
            j, spec.values[1], Vec3c{Complex(1.0), (Complex(c) - root) / 2.0, Complex(0.0)});
        spec.vectors[2] = checked_vector(
            j, spec.values[2], Vec3c{Complex(1.0), (Complex(c) + root) / 2.0, Complex(0.0)});
        return spec;
    }
    case SteadyStateLabel::Ss3: {
        if (!(a > 0.0)) throw domain_error("spectrum_closed_form: Ss3 requires A > 0");
        const double sr = std::sqrt(b / a);
        const Complex root = std::sqrt(Complex(1.0 - 8.0 * b * (1.0 + c * sr), 0.0));
        spec.values[0] = Complex(sr - 1.0);
        spec.values[1] = snap_real((Complex(-1.0) + root) / 2.0);
        spec.values[2] = snap_real((Complex(-1.0) - root) / 2.0);
        if (spec.values[1].imag() != 0.0) spec.values[2] = std::conj(spec.values[1]);

        // The Ss3 point itself is undefined when B = 0; eigenvalues still
        // follow from the formulas but there is no Jacobian to check against.
        if (!(b > 0.0)) return spec;

        const Mat3 j = jacobian(p, State{sr, 0.0, (1.0 + c * sr) / std::sqrt(a * b)});
        std::optional<Vec3c> v1;
        if (sr != 1.0) {
            v1 = Vec3c{Complex(1.0),
                       Complex(-1.0 - 2.0 * std::sqrt(a * b) * (1.0 + c * sr) / (sr - 1.0)),
                       Complex(2.0 * (1.0 + c * sr) / (sr - 1.0))};
        }
        spec.vectors[0] = checked_vector(j, spec.values[0], v1);
        spec.vectors[1] = checked_vector(
            j, spec.values[1],
            Vec3c{Complex(1.0), Complex(0.0), (Complex(-1.0) - root) / (2.0 * b)});
        spec.vectors[2] = checked_vector(
            j, spec.values[2],
            Vec3c{Complex(1.0), Complex(0.0), (Complex(-1.0) + root) / (2.0 * b)});
        return spec;
    }
    default:
        throw domain_error("spectrum_closed_form: label must be Ss1, Ss2 or Ss3");
    }
}

} // namespace lvs
