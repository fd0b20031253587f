#include "lvs/model.hpp"

#include <cmath>

namespace lvs {

namespace {

void require_finite(const State& s, const char* where) {
    if (!s.finite()) throw domain_error(std::string(where) + ": non-finite state");
}

} // namespace

State vector_field(const Params& p, const State& s) {
    require_finite(s, "vector_field");
    const double x = s.x, y = s.y, z = s.z;
    const double x2 = x * x;
    return State{
        x - x * y + p.c() * x2 - p.a() * z * x2,
        -y + x * y,
        -p.b() * z + p.a() * z * x2,
    };
}

Mat3 jacobian(const Params& p, const State& s) {
    require_finite(s, "jacobian");
    const double x = s.x, y = s.y, z = s.z;
    Mat3 j;
    j(0, 0) = 1.0 - y + 2.0 * p.c() * x - 2.0 * p.a() * z * x;
    j(0, 1) = -x;
    j(0, 2) = -p.a() * x * x;
    j(1, 0) = y;
    j(1, 1) = -1.0 + x;
    j(1, 2) = 0.0;
    j(2, 0) = 2.0 * p.a() * z * x;
    j(2, 1) = 0.0;
    j(2, 2) = -p.b() + p.a() * x * x;
    return j;
}

Mat3 jacobian_fd(const Params& p, const State& s, double h) {
    require_finite(s, "jacobian_fd");
    if (!(h > 0.0)) throw domain_error("jacobian_fd: h must be positive");
    Mat3 j;
    for (int col = 0; col < 3; ++col) {
        State sp = s, sm = s;
        double* cp = col == 0 ? &sp.x : col == 1 ? &sp.y : &sp.z;
        double* cm = col == 0 ? &sm.x : col == 1 ? &sm.y : &sm.z;
        *cp += h;
        *cm -= h;
        const State fp = vector_field(p, sp);
        const State fm = vector_field(p, sm);
        j(0, col) = (fp.x - fm.x) / (2.0 * h);
        j(1, col) = (fp.y - fm.y) / (2.0 * h);
        j(2, col) = (fp.z - fm.z) / (2.0 * h);
    }
    return j;
}

SteadyStateSet steady_states(const Params& p) {
    const double a = p.a(), b = p.b(), c = p.c();
    SteadyStateSet set;

    auto& s1 = set.entries[0];
    s1 = {SteadyStateLabel::Ss1, State{0.0, 0.0, 0.0}, true, true};

    auto& s2 = set.entries[1];
    s2 = {SteadyStateLabel::Ss2, State{1.0, 1.0 + c, 0.0}, true, true};

    auto& s3 = set.entries[2];
    s3.label = SteadyStateLabel::Ss3;
    if (a > 0.0 && b > 0.0) {
        const double r = std::sqrt(b / a);
        s3.point = State{r, 0.0, (1.0 + c * r) / std::sqrt(a * b)};
        s3.defined = true;
        s3.admissible = s3.point.in_p3(0.0);
    }

    auto& s4 = set.entries[3];
    s4.label = SteadyStateLabel::Ss4;
    if (c > 0.0) {
        s4.point = State{-1.0 / c, 0.0, 0.0};
        s4.defined = true;
        s4.admissible = false;
    }

    auto& s5 = set.entries[4];
    s5.label = SteadyStateLabel::Ss5;
    if (a > 0.0 && b > 0.0) {
        const double r = std::sqrt(b / a);
        s5.point = State{-r, 0.0, (c * r - 1.0) / std::sqrt(a * b)};
        s5.defined = true;
        s5.admissible = false;
    }

    return set;
}

SlowManifold::SlowManifold(const Params& p) : params_(p), base_{1.0, 1.0 + p.c(), 0.0} {
    if (!(p.a() > 0.0)) throw domain_error("slow_manifold: requires A > 0");
    const double n = std::sqrt(p.a() * p.a() + 1.0);
    dir_ = {0.0, p.a() / n, -1.0 / n};
}

double SlowManifold::distance(const State& s) const {
    const Vec3 d{s.x - base_.x, s.y - base_.y, s.z - base_.z};
    const double t = dot(d, dir_);
    const Vec3 r{d[0] - t * dir_[0], d[1] - t * dir_[1], d[2] - t * dir_[2]};
    return norm(r);
}

double SlowManifold::axial(const State& s) const {
    const Vec3 d{s.x - base_.x, s.y - base_.y, s.z - base_.z};
    return dot(d, dir_);
}

} // namespace lvs
