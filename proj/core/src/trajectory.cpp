#include "vortex/trajectory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "vortex/csv.hpp"

namespace vortex::trajectory {

namespace {

constexpr double kPlaneVelocityBound = 1e3;   // m/s
constexpr double kSphereVelocityBound = 1.0;  // rad/s
constexpr double kLatitudeCap = std::numbers::pi / 2 - 0.05;

using Y = std::array<double, 4>;  // (X1, X2, V1, V2)

Y operator+(const Y& a, const Y& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
Y operator*(double s, const Y& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

struct Rhs {
    const TrajectoryProblem& p;
    double b0;

    Y operator()(double t, const Y& y) const {
        const Vec2 X{y[0], y[1]};
        const Vec2 V{y[2], y[3]};
        const double l = model::coriolis_at(p.coriolis, X);
        const Vec2 grad = potential::bearing_gradient_at_origin(p.bearing, t, b0);
        const Vec2 acc = -l * lrot(V) - p.c0 * grad;
        return {V.x1, V.x2, acc.x1, acc.x2};
    }
};

// Dormand-Prince 5(4) tableau with the standard dense-output polynomial.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseSegment {
    double t0, h;
    std::array<Y, 5> r;  // Hairer rcont1..rcont5

    Y eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        Y out;
        for (int i = 0; i < 4; ++i)
            out[i] = r[0][i] +
                     th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        return out;
    }
};

TrajectoryState to_state(double t, const Y& y) {
    return {t, {y[0], y[1]}, {y[2], y[3]}};
}

}  // namespace

TrajectoryResult integrate(const TrajectoryProblem& problem, const IntegrateOptions& opts) {
    if (problem.horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
    if (opts.rel_tol <= 0.0 || opts.abs_tol <= 0.0)
        throw std::invalid_argument("tolerances must be > 0");
    const bool sphere = problem.geometry == Geometry::sphere;
    if (sphere != std::holds_alternative<model::Sphere>(problem.coriolis))
        throw std::invalid_argument(
            "geometry and Coriolis variant disagree (sphere geometry requires the "
            "Sphere variant and vice versa)");
    if (problem.horizon == 0.0) {
        TrajectoryResult only;
        only.states.push_back(problem.initial);
        return only;
    }

    const Rhs rhs{problem, problem.vortex.b0()};
    const double v_bound = sphere ? kSphereVelocityBound : kPlaneVelocityBound;
    const double t_end = problem.initial.t + problem.horizon;

    TrajectoryResult result;
    auto sample = opts.sample_times;
    std::sort(sample.begin(), sample.end());
    std::size_t next_sample = 0;
    const bool use_samples = !sample.empty();

    double t = problem.initial.t;
    Y y{problem.initial.X.x1, problem.initial.X.x2, problem.initial.V.x1, problem.initial.V.x2};
    Y k1 = rhs(t, y);

    auto emit_direct = [&](double tt, const Y& yy) { result.states.push_back(to_state(tt, yy)); };
    auto emit_through = [&](const DenseSegment& seg, double seg_t1, const Y& y1) {
        if (!use_samples) {
            emit_direct(seg_t1, y1);
            return;
        }
        while (next_sample < sample.size() && sample[next_sample] <= seg_t1 + 1e-9 * std::abs(seg_t1)) {
            const double ts = sample[next_sample];
            if (ts >= seg.t0) emit_direct(ts, seg.eval(ts));
            ++next_sample;
        }
    };

    if (use_samples) {
        while (next_sample < sample.size() && sample[next_sample] <= t) {
            if (sample[next_sample] == t) emit_direct(t, y);
            ++next_sample;
        }
    } else {
        emit_direct(t, y);
    }

    // Initial step from the scale of the first derivative.
    double h = std::min(problem.horizon / 100.0,
                        0.01 * (norm({y[2], y[3]}) + opts.abs_tol) /
                            (norm({k1[2], k1[3]}) + opts.abs_tol / problem.horizon));
    h = std::clamp(h, 1e-6, problem.horizon);
    double err_old = 1.0;

    while (t < t_end) {
        h = std::min(h, t_end - t);
        if (h < 1e-12 * std::max(1.0, std::abs(t))) {
            result.reason = StopReason::step_underflow;
            result.t_star = t;
            return result;
        }

        const Y k2 = rhs(t + h / 5, y + (h * a21) * k1);
        const Y k3 = rhs(t + 3 * h / 10, y + (h * a31) * k1 + (h * a32) * k2);
        const Y k4 = rhs(t + 4 * h / 5, y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
        const Y k5 = rhs(t + 8 * h / 9,
                         y + (h * a51) * k1 + (h * a52) * k2 + (h * a53) * k3 + (h * a54) * k4);
        const Y k6 = rhs(t + h, y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                                    (h * a64) * k4 + (h * a65) * k5);
        const Y y1 = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
                     (h * b6) * k6;
        const Y k7 = rhs(t + h, y1);  // FSAL

        double err_sq = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.abs_tol +
                              opts.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
            err_sq += (ei / sc) * (ei / sc);
        }
        const double err = std::sqrt(err_sq / 4.0);

        if (err <= 1.0) {
            DenseSegment seg;
            seg.t0 = t;
            seg.h = h;
            for (int i = 0; i < 4; ++i) {
                const double ydiff = y1[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                seg.r[0][i] = y[i];
                seg.r[1][i] = ydiff;
                seg.r[2][i] = bspl;
                seg.r[3][i] = ydiff - h * k7[i] - bspl;
                seg.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                   d6 * k6[i] + d7 * k7[i]);
            }

            t += h;
            y = y1;
            k1 = k7;
            emit_through(seg, t, y);

            if (norm({y[2], y[3]}) > v_bound) {
                result.reason = StopReason::velocity_bound;
                result.t_star = t;
                return result;
            }
            if (sphere && std::abs(y[1]) >= kLatitudeCap) {
                result.reason = StopReason::latitude_cap;
                result.t_star = t;
                return result;
            }

            const double factor = 0.9 * std::pow(err + 1e-30, -0.14) * std::pow(err_old, 0.08);
            h *= std::clamp(factor, 0.2, 5.0);
            err_old = std::max(err, 1e-10);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
        }
    }
    return result;
}

LPlaneClosedForm::LPlaneClosedForm(const TrajectoryProblem& problem) {
    const auto* lp = std::get_if<model::LPlane>(&problem.coriolis);
    if (!lp)
        throw std::domain_error("closed form requires the LPlane Coriolis variant");
    double M10, M20;
    if (const auto* ls = std::get_if<potential::LinearSlope>(&problem.bearing.family)) {
        M10 = ls->M10;
        M20 = ls->M20;
    } else if (const auto* loc = std::get_if<potential::LocalizedSlope>(&problem.bearing.family)) {
        M10 = loc->M10;
        M20 = loc->M20;
    } else {
        throw std::domain_error("closed form requires a LinearSlope or LocalizedSlope bearing");
    }

    l_ = lp->l0;
    b0_ = problem.vortex.b0();
    if (l_ == 0.0 || b0_ == 0.0 || l_ == b0_)
        throw std::domain_error(
            "closed form is degenerate (needs l != 0, b0 != 0, l != b0); use the "
            "numeric integrator for this configuration");

    const double c0 = problem.c0;
    const double D = b0_ - l_;
    const Vec2 X0 = problem.initial.X;
    const Vec2 V0 = problem.initial.V;

    cx1_ = X0.x1 + V0.x2 / l_ + c0 * M10 / (b0_ * l_);
    cx2_ = X0.x2 - V0.x1 / l_ + c0 * M20 / (b0_ * l_);
    sl1_ = V0.x1 / l_ - c0 * M20 / (l_ * D);
    sl2_ = V0.x2 / l_ + c0 * M10 / (l_ * D);
    ab1_ = c0 * M10 / (b0_ * D);
    ab2_ = c0 * M20 / (b0_ * D);
}

TrajectoryState LPlaneClosedForm::operator()(double t) const {
    const double cl = std::cos(l_ * t), sl = std::sin(l_ * t);
    const double cb = std::cos(b0_ * t), sb = std::sin(b0_ * t);
    TrajectoryState s;
    s.t = t;
    s.X = {cx1_ + sl1_ * sl - sl2_ * cl + ab2_ * sb + ab1_ * cb,
           cx2_ + sl2_ * sl + sl1_ * cl - ab1_ * sb + ab2_ * cb};
    s.V = {l_ * (sl1_ * cl + sl2_ * sl) + b0_ * (ab2_ * cb - ab1_ * sb),
           l_ * (sl2_ * cl - sl1_ * sl) - b0_ * (ab1_ * cb + ab2_ * sb)};
    return s;
}

LPlaneClosedForm closed_form_lplane(const TrajectoryProblem& problem) {
    return LPlaneClosedForm(problem);
}

void trajectory_to_csv(std::span<const TrajectoryState> states, const std::string& path) {
    if (states.empty()) throw std::invalid_argument("trajectory_to_csv: empty sequence");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "t,x1,x2,v1,v2\n";
    for (const auto& s : states) {
        csv::write_field(os, s.t, false);
        csv::write_field(os, s.X.x1, false);
        csv::write_field(os, s.X.x2, false);
        csv::write_field(os, s.V.x1, false);
        csv::write_field(os, s.V.x2, true);
    }
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace vortex::trajectory
