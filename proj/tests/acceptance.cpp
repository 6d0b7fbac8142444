// Acceptance gate for the toolkit: each numbered check prints one PASS/FAIL
// line with the measured quantity and its limit.  The process exits nonzero
// if any check fails, so CI can gate on this binary alone.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vortex/discrepancy.hpp"
#include "vortex/grid_solver.hpp"
#include "vortex/model.hpp"
#include "vortex/potential.hpp"
#include "vortex/sphere.hpp"
#include "vortex/trajectory.hpp"

using namespace vortex;

namespace {

constexpr double kB0 = 3.5e3;
constexpr double kSigma = 1e-9;
constexpr int kN = 60;
constexpr double kDx = 12.8e3;
constexpr double kDt = 10.0;

struct Line {
    int id;
    bool ok;
    std::string detail;
};
std::vector<Line> g_lines;

void report(int id, bool ok, const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    g_lines.push_back({id, ok, buf});
}

double elapsed(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

model::PhysicalParams sec45_params() {
    const double phi0 = 30.0 * std::numbers::pi / 180.0;
    return model::derive_params_c0(7.3e-5, 6.39e6, phi0, 1.4, 0.1);
}

trajectory::TrajectoryProblem sec45_problem(const model::PhysicalParams& p,
                                            model::CoriolisModel coriolis) {
    trajectory::TrajectoryProblem prob;
    prob.coriolis = coriolis;
    prob.vortex = potential::gaussian(kB0, kSigma);
    prob.bearing = potential::localized_slope(0.0, 2e-3, 1e-3, 0.0, 8e-13, prob.vortex);
    prob.c0 = p.c0;
    prob.initial = {0.0, {0.0, 0.0}, {-1.0, 1.0}};
    prob.horizon = 7 * 86400.0;
    return prob;
}

// 1. Adaptive integration of the center ODE against the closed-form l-plane
//    solution, minute-sampled over seven days.
void check_closed_form_oracle(const model::PhysicalParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    auto prob = sec45_problem(p, model::LPlane{p.l0});
    prob.bearing = potential::linear_slope(2e-3, 1e-3, 0.0);
    trajectory::IntegrateOptions opts;
    for (int m = 0; m <= 7 * 24 * 60; ++m) opts.sample_times.push_back(m * 60.0);
    const auto res = trajectory::integrate(prob, opts);
    const auto cf = trajectory::closed_form_lplane(prob);
    double worst = 0.0;
    for (const auto& s : res.states) {
        const Vec2 th = cf(s.t).X;
        worst = std::max(worst,
                         std::max(std::abs(s.X.x1 - th.x1), std::abs(s.X.x2 - th.x2)));
    }
    const double dt = elapsed(t0);
    report(1, worst < 1.0 && dt < 1.0,
           "l-plane path, RK vs closed form over 7 d: max deviation %.3e m "
           "(limit 1 m) in %.2f s (limit 1 s)",
           worst, dt);
}

// 2. The linear vortex on a uniform slope is an exact solution: the residual
//    field Q vanishes at working precision on a 500 km ball around the center
//    for the whole week.
void check_exact_solution(const model::PhysicalParams& p) {
    auto prob = sec45_problem(p, model::LPlane{p.l0});
    prob.vortex = potential::linear(3.5e-6);
    prob.bearing = potential::linear_slope(2e-3, 1e-3, 0.0);
    const auto cf = trajectory::closed_form_lplane(prob);
    const auto A = discrepancy::default_A(prob);
    double worst = 0.0;
    for (int it = 0; it <= 20; ++it) {
        const auto s = cf(it * (7 * 86400.0 / 20.0));
        for (int ir = 0; ir <= 5; ++ir)
            for (int ia = 0; ia < 12; ++ia) {
                const double r = ir * 1e5;
                const double ang = ia * std::numbers::pi / 6.0;
                const Vec2 q = discrepancy::q_field(
                    prob, s, {r * std::cos(ang), r * std::sin(ang)}, A);
                worst = std::max(worst, std::max(std::abs(q.x1), std::abs(q.x2)));
            }
    }
    const double scale = p.c0 * 2e-3 + p.l0 * std::numbers::sqrt2;
    report(2, worst < 1e-14 * scale,
           "linear vortex on a uniform slope: max |Q| = %.2e over a 500 km ball "
           "and 7 d (limit %.2e)",
           worst, 1e-14 * scale);
}

// 3. Steady-state equation residuals for every velocity-potential family, on
//    the plane and on the sphere, at random points.
void check_master_residuals(const model::PhysicalParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(2026);
    // Sampled out to ~12 core radii of the Gaussian member; far beyond that
    // the velocities underflow and relative error loses meaning.
    std::uniform_real_distribution<double> coord(-4e5, 4e5);
    const Mat2 A = coriolis_matrix(p.l0);
    double worst = 0.0;
    for (const auto& spec : {potential::linear(3.5e-6), potential::gaussian(kB0, kSigma),
                             potential::power_law(2e3, 1e-9, 1.7)}) {
        for (int i = 0; i < 10000; ++i) {
            const Vec2 x{coord(rng), coord(rng)};
            const double res = potential::master_residual(spec, A, x);
            const double scale = potential::master_scale(spec, A, x);
            worst = std::max(worst, std::abs(res) / std::max(scale, 1e-300));
        }
    }

    std::uniform_real_distribution<double> lam_d(-3.1, 3.1);
    std::uniform_real_distribution<double> phi_d(-1.45, 1.45);
    const sphere::SphericalVortexSpec members[] = {
        {0.0, 1.2e-6, 0.0, {}},
        {0.9e-6, 0.0, 0.0, {}},
        {0.9e-6, 1.2e-6, 0.7e-6, {}},
        {0.9e-6, 1.2e-6, 0.7e-6,
         {[](double w) { return w + 0.3 * w * w; },
          [](double w) { return 1.0 + 0.6 * w; }, [](double) { return 0.6; }}},
        {0.0, 0.0, 20.0 / 6.39e6, {}},
    };
    double worst_s = 0.0;
    for (const auto& m : members)
        for (int i = 0; i < 10000; ++i) {
            const double lam = lam_d(rng), phi = phi_d(rng);
            const double res = sphere::spherical_master_residual(m, lam, phi);
            const double scale = sphere::spherical_master_scale(m, lam, phi);
            worst_s = std::max(worst_s, std::abs(res) / std::max(scale, 1e-300));
        }
    const double dt = elapsed(t0);
    report(3, worst < 1e-10 && worst_s < 1e-10 && dt < 1.0,
           "steady-state residuals at 10^4 random points per family: plane %.2e, "
           "sphere %.2e (limit 1e-10) in %.2f s (limit 1 s)",
           worst, worst_s, dt);
}

// 4. The localized rotating-slope pressure field is advected by its paired
//    vortex: centered finite differences of d(pi1)/dt + u.grad(pi1).
void check_bearing_transport() {
    const auto vortex = potential::gaussian(kB0, kSigma);
    const auto loc = potential::localized_slope(0.0, 2e-3, 1e-3, 0.0, 8e-13, vortex);
    const double b0 = kB0 * kSigma;
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coord(-1.5e5, 1.5e5);
    std::uniform_real_distribution<double> time(0.0, 2e5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec2 x{coord(rng), coord(rng)};
        const double t = time(rng);
        // Time step sized to the local rotation rate (~1 mrad of turn), so the
        // difference rises above the round-off of the large static part.
        const double rate = b0 * std::exp(-0.5 * kSigma * dot(x, x));
        const double ht = 1e-3 / std::max(rate, 1e-30);
        const double dpdt = (potential::bearing_at(loc, t + ht, x, b0) -
                             potential::bearing_at(loc, t - ht, x, b0)) /
                            (2.0 * ht);
        const Vec2 grad{(potential::bearing_at(loc, t, {x.x1 + 1.0, x.x2}, b0) -
                         potential::bearing_at(loc, t, {x.x1 - 1.0, x.x2}, b0)) /
                            2.0,
                        (potential::bearing_at(loc, t, {x.x1, x.x2 + 1.0}, b0) -
                         potential::bearing_at(loc, t, {x.x1, x.x2 - 1.0}, b0)) /
                            2.0};
        const Vec2 u = potential::velocity(vortex, x);
        const double res = dpdt + u.x1 * grad.x1 + u.x2 * grad.x2;
        const double scale = std::abs(dpdt) + norm(u) * norm(grad) + 1e-16;
        worst = std::max(worst, std::abs(res) / scale);
    }
    report(4, worst < 1e-6,
           "localized bearing transport d(pi1)/dt + u.grad(pi1) = 0: worst relative "
           "FD residual %.2e at 10^3 random (t, x) (limit 1e-6)",
           worst);
}

// 5. l-plane and beta-plane center paths stay close at the standard mid-latitude
//    parameters: within 10%% of the traversed path length for two days and 25%%
//    for seven.  (The published figure shows near-coincident curves at two days;
//    these bounds are the recorded baseline for this configuration.)
void check_beta_plane_proximity(const model::PhysicalParams& p) {
    trajectory::IntegrateOptions opts;
    for (int m = 0; m <= 7 * 24 * 60; ++m) opts.sample_times.push_back(m * 60.0);
    const auto res_l =
        trajectory::integrate(sec45_problem(p, model::LPlane{p.l0}), opts);
    const auto res_b =
        trajectory::integrate(sec45_problem(p, model::BetaPlane{p.l0, p.beta}), opts);
    const std::size_t n = std::min(res_l.states.size(), res_b.states.size());
    double path = 0.0, worst2 = 0.0, worst7 = 0.0, path2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) path += norm(res_l.states[i].X - res_l.states[i - 1].X);
        const double dev = norm(res_l.states[i].X - res_b.states[i].X);
        if (res_l.states[i].t <= 2 * 86400.0 + 1.0) {
            worst2 = std::max(worst2, dev);
            path2 = path;
        }
        worst7 = std::max(worst7, dev);
    }
    const double pct2 = 100.0 * worst2 / path2;
    const double pct7 = 100.0 * worst7 / path;
    report(5, pct2 < 10.0 && pct7 < 25.0,
           "l-plane vs beta-plane separation: %.2f%% of the 2 d path (limit 10%%), "
           "%.2f%% of the 7 d path (limit 25%%)",
           pct2, pct7);
}

// 6. The tracked grid vortex follows the theoretical center under the weak
//    bearing field: 60x60 cells, dx = 12.8 km, dt = 10 s, six simulated hours.
void check_tracked_center(const model::PhysicalParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto vortex = potential::gaussian(kB0, kSigma);
    const auto bearing = potential::localized_slope(0.0, -1e-5, 1e-5, 0.0, 1e-13, vortex);
    grid::SolverConfig cfg = grid::make_config(p, model::LPlane{p.l0}, kDt, 2160);
    const grid::GridGeometry geom{kN, kN, kDx, kDx};
    auto st = grid::initialize_vortex(geom, vortex, bearing, {2.0, 2.0}, cfg);

    trajectory::TrajectoryProblem prob;
    prob.coriolis = model::LPlane{p.l0};
    prob.bearing = bearing;
    prob.vortex = vortex;
    prob.c0 = p.c0;
    prob.initial = {0.0, {kN * kDx / 2.0, kN * kDx / 2.0}, {2.0, 2.0}};
    prob.horizon = 2160 * kDt;
    const auto cf = trajectory::closed_form_lplane(prob);

    double worst = 0.0;
    bool tracked = true;
    for (int k = 1; k <= 2160; ++k) {
        st = grid::step(st, cfg);
        if (k % 180 == 0) {
            const auto ctr = grid::track_center(st);
            if (!ctr) {
                tracked = false;
                break;
            }
            const Vec2 th = cf(k * kDt).X;
            worst = std::max(worst, norm(*ctr - th) / kDx);
        }
    }
    const double dt = elapsed(t0);
    report(6, tracked && worst < 2.0 && dt < 120.0,
           "tracked vortex center vs theoretical path, weak bearing, 6 h: max "
           "deviation %.3f cells (limit 2) in %.1f s (limit 120 s)",
           worst, dt);
}

// 7. Order of the scheme, by manufactured solution: an advected density wave
//    with the compensating momentum source, refined 2x in space and time.
void check_scheme_order(const model::PhysicalParams& p) {
    auto mms = [&p](int n, double dt_, int steps) {
        const double L = 768e3, dx_ = L / n;
        const double kx = 2 * std::numbers::pi / L, ky = 4 * std::numbers::pi / L;
        const double rho0 = 3.5e4, A = 3.5e2, ua = 20.0, va = -10.0;
        grid::SolverConfig cfg = grid::make_config(p, model::LPlane{0.0}, dt_, steps);
        cfg.boundary = grid::Boundary::periodic;
        const double CF = cfg.flux_coefficient, KAP = cfg.flux_exponent;
        auto rho_star = [=](double t, double x, double y) {
            return rho0 + A * std::sin(kx * (x - ua * t)) * std::sin(ky * (y - va * t));
        };
        cfg.extra_source = [=](double t, double x, double y) {
            const double r = rho_star(t, x, y);
            const double drx =
                A * kx * std::cos(kx * (x - ua * t)) * std::sin(ky * (y - va * t));
            const double dry =
                A * ky * std::sin(kx * (x - ua * t)) * std::cos(ky * (y - va * t));
            const double pref = CF * KAP * std::pow(r, KAP - 1.0);
            return std::array<double, 3>{0.0, pref * drx, pref * dry};
        };
        grid::GridState st;
        st.nx = st.ny = n;
        st.dx = st.dy = dx_;
        st.rho.resize(static_cast<std::size_t>(n) * n);
        st.mx.resize(st.rho.size());
        st.my.resize(st.rho.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double r = rho_star(0.0, st.x_center(i), st.y_center(j));
                st.rho[st.idx(i, j)] = r;
                st.mx[st.idx(i, j)] = r * ua;
                st.my[st.idx(i, j)] = r * va;
            }
        for (int k = 0; k < steps; ++k) st = grid::step(st, cfg);
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double d =
                    st.rho[st.idx(i, j)] - rho_star(st.time, st.x_center(i), st.y_center(j));
                sum += d * d;
            }
        return std::sqrt(sum / (n * static_cast<double>(n)));
    };
    const double e1 = mms(128, 15.0, 144);
    const double e2 = mms(256, 7.5, 288);
    const double ratio = e1 / e2;
    report(7, ratio > 3.5 && ratio < 4.5,
           "manufactured advection, 2x refinement: L2 error %.3e -> %.3e, ratio "
           "%.3f (limits [3.5, 4.5])",
           e1, e2, ratio);
}

struct LongRunMetrics {
    double periodic_per_step = 0.0;
    double neumann_leak = 0.0;
    double shape = 0.0;
    bool tracked = true;
};

// Shared long runs for the conservation and shape checks: a 200-step periodic
// run, and a 10^4-step Neumann run whose 6 h snapshot feeds the shape metric.
LongRunMetrics long_grid_runs(const model::PhysicalParams& p) {
    LongRunMetrics out;
    const auto vortex = potential::gaussian(kB0, kSigma);
    const auto zero = potential::zero_bearing();
    const grid::GridGeometry geom{kN, kN, kDx, kDx};

    grid::SolverConfig pcfg = grid::make_config(p, model::LPlane{0.0}, kDt, 200);
    pcfg.boundary = grid::Boundary::periodic;
    auto pst = grid::initialize_vortex(geom, vortex, zero, {3.0, -2.0}, pcfg);
    double m0 = 0.0;
    for (double r : pst.rho) m0 += r;
    for (int k = 0; k < 200; ++k) pst = grid::step(pst, pcfg);
    double m1 = 0.0;
    for (double r : pst.rho) m1 += r;
    out.periodic_per_step = std::abs(m1 - m0) / m0 / 200.0;

    grid::SolverConfig cfg = grid::make_config(p, model::LPlane{p.l0}, kDt, 10000);
    auto st = grid::initialize_vortex(geom, vortex, zero, {0.0, 0.0}, cfg);
    std::vector<double> pi_i(st.rho.size());
    for (std::size_t k = 0; k < st.rho.size(); ++k)
        pi_i[k] = grid::pi_from_rho(cfg, st.rho[k]) - cfg.pi_ambient;
    double n0 = 0.0;
    for (double r : st.rho) n0 += r;

    for (int k = 0; k < 2160; ++k) st = grid::step(st, cfg);
    const Vec2 X0{kN * kDx / 2.0, kN * kDx / 2.0};
    const auto ctr = grid::track_center(st);
    if (!ctr) {
        out.tracked = false;
        return out;
    }
    const int s1 = static_cast<int>(std::lround((ctr->x1 - X0.x1) / kDx));
    const int s2 = static_cast<int>(std::lround((ctr->x2 - X0.x2) / kDx));
    double num = 0.0, den = 0.0;
    for (int i = 0; i < kN; ++i)
        for (int j = 0; j < kN; ++j) {
            const int ii = ((i + s1) % kN + kN) % kN;
            const int jj = ((j + s2) % kN + kN) % kN;
            const double pf = grid::pi_from_rho(cfg, st.rho[st.idx(ii, jj)]) - cfg.pi_ambient;
            const double d = pf - pi_i[st.idx(i, j)];
            num += d * d;
            den += pi_i[st.idx(i, j)] * pi_i[st.idx(i, j)];
        }
    out.shape = std::sqrt(num / den);

    for (int k = 2160; k < 10000; ++k) st = grid::step(st, cfg);
    double n1 = 0.0;
    for (double r : st.rho) n1 += r;
    out.neumann_leak = std::abs(n1 - n0) / n0;
    return out;
}

// 10. Exact stationary solutions on the sphere: the non-rotating b-member and
//     the rotating zonal flow balance the momentum equations pointwise.
void check_sphere_stationary() {
    const double phi0 = 30.0 * std::numbers::pi / 180.0;
    const auto p_rest = model::derive_params_c0(0.0, 6.39e6, phi0, 1.4, 0.1);
    const auto p_rot = model::derive_params_c0(7.3e-5, 6.39e6, phi0, 1.4, 0.1);
    const sphere::SphericalVortexSpec b_member{0.0, 1.2e-6, 0.0, {}};
    const sphere::SphericalVortexSpec zonal{0.0, 0.0, 20.0 / 6.39e6, {}};

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lam_d(-3.1, 3.1);
    std::uniform_real_distribution<double> phi_d(-1.45, 1.45);
    double worst_b = 0.0, worst_z = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto rb =
            sphere::spherical_momentum_residual(b_member, p_rest, lam_d(rng), phi_d(rng));
        worst_b = std::max(worst_b, std::max(std::abs(rb.r.x1), std::abs(rb.r.x2)) /
                                        std::max(rb.scale, 1e-300));
        const auto rz =
            sphere::spherical_momentum_residual(zonal, p_rot, lam_d(rng), phi_d(rng));
        worst_z = std::max(worst_z, std::max(std::abs(rz.r.x1), std::abs(rz.r.x2)) /
                                        std::max(rz.scale, 1e-300));
    }
    report(10, worst_b < 1e-8 && worst_z < 1e-8,
           "spherical stationary solutions at 10^4 chart points: vortex member "
           "%.2e, zonal flow %.2e relative (limit 1e-8)",
           worst_b, worst_z);
}

}  // namespace

int main() {
    const auto params = sec45_params();

    check_closed_form_oracle(params);
    check_exact_solution(params);
    check_master_residuals(params);
    check_bearing_transport();
    check_beta_plane_proximity(params);
    check_tracked_center(params);
    check_scheme_order(params);

    const auto runs = long_grid_runs(params);
    report(8, runs.periodic_per_step < 1e-12 && runs.neumann_leak < 1e-8,
           "mass conservation: periodic %.2e relative per step (limit 1e-12), "
           "Neumann %.2e over 10^4 steps (limit 1e-8)",
           runs.periodic_per_step, runs.neumann_leak);
    report(9, runs.tracked && runs.shape < 0.05,
           "shape preservation, null bearing, 6 h: re-centered pressure anomaly "
           "differs by %.4f relative L2 (limit 0.05)",
           runs.shape);

    check_sphere_stationary();

    std::sort(g_lines.begin(), g_lines.end(),
              [](const Line& a, const Line& b) { return a.id < b.id; });
    int failures = 0;
    for (const auto& l : g_lines) {
        std::printf("criterion %2d: %s  %s\n", l.id, l.ok ? "PASS" : "FAIL",
                    l.detail.c_str());
        if (!l.ok) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(g_lines.size()) - failures,
                g_lines.size());
    return failures == 0 ? 0 : 1;
}
