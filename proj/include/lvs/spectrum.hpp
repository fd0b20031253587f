#pragma once

#include <array>
#include <complex>
#include <optional>

#include "lvs/model.hpp"

namespace lvs {

using Complex = std::complex<double>;
using Vec3c = std::array<Complex, 3>;

enum class SpectrumSource { closed_form, numeric };

// Eigenvalues (and, where defined, eigenvectors) of a 3x3 Jacobian.
// Non-real eigenvalues come as a conjugate pair; eigenvectors whose formulas
// divide by zero, or whose residual fails the check, are left unset.
struct Spectrum {
    std::array<Complex, 3> values{};
    std::array<std::optional<Vec3c>, 3> vectors{};
    SpectrumSource source = SpectrumSource::numeric;

    // Eigenvalues sorted lexicographically by (Re, Im), for comparisons.
    std::array<Complex, 3> sorted() const;
};

// Declares an eigenvalue real when its imaginary part is negligible and
// snaps it onto the real axis.
Complex snap_real(Complex z);

// Closed-form spectra of the Jacobian at Ss1, Ss2 or Ss3. Ss3 requires A > 0.
Spectrum spectrum_closed_form(const Params& p, SteadyStateLabel label);

// Independent eigen-oracle: roots of the characteristic cubic of the analytic
// Jacobian at s (trigonometric branch for three real roots, Cardano plus a
// quadratic factor otherwise), eigenvectors by null-space extraction.
Spectrum spectrum_numeric(const Params& p, const State& s);

// Roots of x^3 + a2 x^2 + a1 x + a0 = 0, conjugate pairing enforced.
std::array<Complex, 3> solve_cubic(double a2, double a1, double a0);

// ||Jv - lambda v|| relative to max(1, ||J||_inf) * ||v||.
double eigen_residual(const Mat3& j, Complex lambda, const Vec3c& v);

} // namespace lvs
