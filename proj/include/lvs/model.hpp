#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "lvs/errors.hpp"

namespace lvs {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Model parameters: A couples predator Z to the prey, B is Z's decay rate,
// C is the prey self-interaction strength. All must be nonnegative.
class Params {
public:
    Params(double a, double b, double c) : a_(a), b_(b), c_(c) {
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)))
            throw domain_error("Params: non-finite parameter");
        if (a < 0.0 || b < 0.0 || c < 0.0)
            throw domain_error("Params: A, B, C must be nonnegative");
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

    // B/A, undefined when A = 0.
    std::optional<double> ratio() const {
        if (a_ == 0.0) return std::nullopt;
        return b_ / a_;
    }

private:
    double a_, b_, c_;
};

// A phase-space point (prey X, predators Y and Z).
struct State {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

    // Membership in the closed positive octant, up to roundoff slack.
    bool in_p3(double tol = 1e-9) const { return x >= -tol && y >= -tol && z >= -tol; }

    double norm_inf() const { return std::max({std::fabs(x), std::fabs(y), std::fabs(z)}); }

    Vec3 vec() const { return {x, y, z}; }
};

// Row-major 3x3 matrix, just enough for the Jacobians here.
struct Mat3 {
    std::array<double, 9> m{};

    double& operator()(int i, int j) { return m[3 * i + j]; }
    double operator()(int i, int j) const { return m[3 * i + j]; }

    double norm_inf() const {
        double r = 0.0;
        for (int i = 0; i < 3; ++i) {
            double s = 0.0;
            for (int j = 0; j < 3; ++j) s += std::fabs((*this)(i, j));
            r = std::max(r, s);
        }
        return r;
    }

    Vec3 apply(const Vec3& v) const {
        Vec3 r{};
        for (int i = 0; i < 3; ++i)
            r[i] = (*this)(i, 0) * v[0] + (*this)(i, 1) * v[1] + (*this)(i, 2) * v[2];
        return r;
    }
};

// Right-hand side of the two-predator/one-prey system:
//   dX/dt = X - XY + CX^2 - AZX^2
//   dY/dt = -Y + XY
//   dZ/dt = -BZ + AZX^2
State vector_field(const Params& p, const State& s);

// Analytic Jacobian of vector_field at s.
Mat3 jacobian(const Params& p, const State& s);

// Central-difference Jacobian, the oracle for the analytic one.
Mat3 jacobian_fd(const Params& p, const State& s, double h);

enum class SteadyStateLabel { Ss1 = 0, Ss2, Ss3, Ss4, Ss5 };

struct SteadyState {
    SteadyStateLabel label;
    State point{};       // meaningful only when defined
    bool defined = false;
    bool admissible = false;  // defined and inside the positive octant
};

struct SteadyStateSet {
    std::array<SteadyState, 5> entries;

    const SteadyState& operator[](SteadyStateLabel l) const {
        return entries[static_cast<int>(l)];
    }
};

// The five closed-form equilibria. Entries whose formulas divide by zero are
// flagged undefined rather than thrown; negative-coordinate equilibria are
// flagged inadmissible.
SteadyStateSet steady_states(const Params& p);

// The singular line {X = 1, Y + AZ = 1 + C} through Ss2 and (at B/A = 1) Ss3.
class SlowManifold {
public:
    explicit SlowManifold(const Params& p);

    const State& base_point() const { return base_; }
    const Vec3& direction() const { return dir_; }
    const Params& params() const { return params_; }

    // Euclidean point-to-line distance.
    double distance(const State& s) const;

    // Projection parameter of s along the line (0 at the base point).
    double axial(const State& s) const;

private:
    Params params_;
    State base_;
    Vec3 dir_;
};

inline SlowManifold slow_manifold(const Params& p) { return SlowManifold(p); }

} // namespace lvs
