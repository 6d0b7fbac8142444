#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vortex/model.hpp"
#include "vortex/sphere.hpp"

using namespace vortex;
using namespace vortex::sphere;
using std::numbers::pi;

namespace {

SphericalVortexSpec b_member(double b) { return {0.0, b, 0.0, {}}; }
SphericalVortexSpec zonal(double h) { return {0.0, 0.0, h, {}}; }

SphericalVortexSpec mixed_member() {
    return {0.9e-6, 1.2e-6, 0.7e-6, {}};
}

SphericalVortexSpec shaped_member() {
    OuterProfile prof;
    prof.f = [](double w) { return w + 0.3 * w * w; };
    prof.df = [](double w) { return 1.0 + 0.6 * w; };
    prof.d2f = [](double) { return 0.6; };
    return {0.9e-6, 1.2e-6, 0.7e-6, prof};
}

double family_phi(const SphericalVortexSpec& s, double lambda, double phi) {
    const double w = std::cos(phi) * (s.a * std::sin(lambda) + s.b * std::cos(lambda)) +
                     s.h * std::sin(phi);
    return s.profile.f(w);
}

model::PhysicalParams plane_params(double omega, double l0) {
    model::PhysicalParams p{};
    p.omega = omega;
    p.l0 = l0;
    p.c0 = 0.1;
    return p;
}

std::mt19937& rng() {
    static std::mt19937 gen(71);
    return gen;
}

double sample(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace

TEST_CASE("the b-only member has the advertised closed-form velocity") {
    const double b = 1.2e-6;
    const auto spec = b_member(b);
    const Vec2 at_quarter = spherical_velocity(spec, pi / 2, 0.7);
    CHECK(std::abs(at_quarter.x1) < 1e-20);  // only cos(pi/2) roundoff survives
    CHECK(at_quarter.x2 == doctest::Approx(b).epsilon(1e-14));
    for (int n = 0; n < 50; ++n) {
        const double lambda = sample(-3.1, 3.1), phi = sample(-1.45, 1.45);
        const Vec2 v = spherical_velocity(spec, lambda, phi);
        CHECK(v.x1 == doctest::Approx(-b * std::cos(lambda) * std::sin(phi)).epsilon(1e-13));
        CHECK(v.x2 == doctest::Approx(b * std::sin(lambda)).epsilon(1e-13));
    }
    // Near the chart origin with b = -1 the flow linearizes to (phi, -lambda).
    const Vec2 lin = spherical_velocity(b_member(-1.0), 1e-4, 2e-4);
    CHECK(lin.x1 == doctest::Approx(2e-4).epsilon(1e-6));
    CHECK(lin.x2 == doctest::Approx(-1e-4).epsilon(1e-6));
}

TEST_CASE("family velocities agree with differentiating the potential") {
    const auto spec = shaped_member();
    const double h = 1e-6;
    for (int n = 0; n < 100; ++n) {
        const double lambda = sample(-3.0, 3.0), phi = sample(-1.4, 1.4);
        const Vec2 v = spherical_velocity(spec, lambda, phi);
        const double fd_u = (family_phi(spec, lambda, phi + h) -
                             family_phi(spec, lambda, phi - h)) /
                            (2 * h);
        const double fd_v = -(family_phi(spec, lambda + h, phi) -
                              family_phi(spec, lambda - h, phi)) /
                            (2 * h * std::cos(phi));
        CHECK(v.x1 == doctest::Approx(fd_u).epsilon(1e-6).scale(1e-6));
        CHECK(v.x2 == doctest::Approx(fd_v).epsilon(1e-6).scale(1e-6));
    }
}

TEST_CASE("family velocities are divergence free on the sphere") {
    const auto spec = shaped_member();
    const double h = 1e-4;
    for (int n = 0; n < 1000; ++n) {
        const double lambda = sample(-3.0, 3.0), phi = sample(-1.4, 1.4);
        const double du = (spherical_velocity(spec, lambda + h, phi).x1 -
                           spherical_velocity(spec, lambda - h, phi).x1) /
                          (2 * h);
        const double dv = (spherical_velocity(spec, lambda, phi + h).x2 * std::cos(phi + h) -
                           spherical_velocity(spec, lambda, phi - h).x2 * std::cos(phi - h)) /
                          (2 * h);
        const double scale = std::abs(du) + std::abs(dv) + 1e-12;
        CHECK(std::abs(du + dv) <= 1e-5 * scale);
    }
}

TEST_CASE("the chart refuses the poles and the date line") {
    const auto spec = b_member(1e-6);
    CHECK_THROWS_AS(spherical_velocity(spec, 0.2, pi / 2), std::domain_error);
    CHECK_THROWS_AS(spherical_velocity(spec, 0.2, -1.6), std::domain_error);
    CHECK_THROWS_AS(spherical_velocity(spec, 3.2, 0.1), std::domain_error);
    CHECK_THROWS_AS(spherical_master_residual(spec, -3.15, 0.0), std::domain_error);
    CHECK_THROWS_AS(spherical_master_scale(spec, 0.0, 1.58), std::domain_error);
}

TEST_CASE("every family member annihilates the master operator") {
    for (const auto& spec : {b_member(1.2e-6), mixed_member(), shaped_member()}) {
        for (int n = 0; n < 1000; ++n) {
            const double lambda = sample(-3.1, 3.1), phi = sample(-1.45, 1.45);
            const double res = spherical_master_residual(spec, lambda, phi);
            const double scale = spherical_master_scale(spec, lambda, phi);
            CHECK(std::abs(res) <= 1e-10 * scale + 1e-30);
        }
    }
}

TEST_CASE("the residual matches a finite-difference build of the operator") {
    // Assemble t1 + t2 + t3 from finite differences of Phi alone, so the
    // analytic derivative wiring is checked against the displayed operator:
    //   t1 = Phi_lp (Phi_p^2 - Phi_l^2 / cos^2),
    //   t2 = (Phi_ll / cos^2 - Phi_pp) Phi_l Phi_p,
    //   t3 = -sin / cos^3 * Phi_l^3.
    const double h = 1e-5;
    auto fd_terms = [&](auto&& phi_fn, double l, double p) {
        const double c = std::cos(p), sn = std::sin(p);
        const double f0 = phi_fn(l, p);
        const double fl = (phi_fn(l + h, p) - phi_fn(l - h, p)) / (2 * h);
        const double fp = (phi_fn(l, p + h) - phi_fn(l, p - h)) / (2 * h);
        const double fll = (phi_fn(l + h, p) - 2 * f0 + phi_fn(l - h, p)) / (h * h);
        const double fpp = (phi_fn(l, p + h) - 2 * f0 + phi_fn(l, p - h)) / (h * h);
        const double flp = (phi_fn(l + h, p + h) - phi_fn(l + h, p - h) -
                            phi_fn(l - h, p + h) + phi_fn(l - h, p - h)) /
                           (4 * h * h);
        const double c2 = c * c;
        const double t1 = flp * (fp * fp - fl * fl / c2);
        const double t2 = (fll / c2 - fpp) * fl * fp;
        const double t3 = -sn / (c2 * c) * fl * fl * fl;
        return std::pair{t1 + t2 + t3, std::abs(t1) + std::abs(t2) + std::abs(t3)};
    };

    const auto spec = shaped_member();
    auto member_phi = [&](double l, double p) { return family_phi(spec, l, p); };
    // Differencing a ~1e-6 potential at h = 1e-5 leaves ~1e-21 of absolute
    // round-off in the assembled cubic terms, which dominates wherever the
    // individual terms nearly vanish; the floor reflects that.
    const double floor = 1e-21;
    for (int n = 0; n < 20; ++n) {
        const double lambda = sample(-2.5, 2.5), phi = sample(-1.2, 1.2);
        const auto [fd_res, fd_scale] = fd_terms(member_phi, lambda, phi);
        CHECK(std::abs(fd_res) <= 1e-4 * fd_scale + floor);
        const double lib = spherical_master_residual(spec, lambda, phi);
        CHECK(std::abs(lib - fd_res) <= 1e-4 * fd_scale + floor);
    }

    // A potential outside the family leaves a genuine residual.
    auto outsider = [](double l, double p) { return 1e-6 * std::cos(2 * l) * std::cos(p); };
    const auto [out_res, out_scale] = fd_terms(outsider, 0.7, 0.4);
    CHECK(std::abs(out_res) > 1e-3 * out_scale);
}

TEST_CASE("the b-only steady pressure carries the advertised series") {
    const double b = 1.2e-6;
    const auto spec = b_member(b);
    const auto params = plane_params(0.0, 7.3e-5);
    const double c0 = params.c0, l0 = params.l0;

    const double origin = spherical_steady_pressure(spec, params, 0.0, 0.0);
    CHECK(origin ==
          doctest::Approx(-b * (b + 2 * l0) / (2 * c0)).epsilon(1e-13).scale(0.0));

    // Quadratic coefficient +b(b + l0)/(2 c0) in both chart directions.
    const double c2 = b * (b + l0) / (2 * c0);
    const double d = 0.02;
    const double along_l = (spherical_steady_pressure(spec, params, d, 0.0) -
                            2 * origin + spherical_steady_pressure(spec, params, -d, 0.0)) /
                           (d * d);
    const double along_p = (spherical_steady_pressure(spec, params, 0.0, d) -
                            2 * origin + spherical_steady_pressure(spec, params, 0.0, -d)) /
                           (d * d);
    CHECK(along_l == doctest::Approx(2 * c2).epsilon(1e-3).scale(0.0));
    CHECK(along_p == doctest::Approx(2 * c2).epsilon(1e-3).scale(0.0));
}

TEST_CASE("the zonal steady pressure balances the planetary frame") {
    const double h = 3e-6, omega = 7.3e-5;
    const auto spec = zonal(h);
    const auto params = plane_params(omega, 7.3e-5);
    const double peak = h * (h + 2 * omega) / (4 * params.c0);
    CHECK(spherical_steady_pressure(spec, params, 0.4, 0.0) ==
          doctest::Approx(peak).epsilon(1e-13).scale(0.0));
    CHECK(std::abs(spherical_steady_pressure(spec, params, 0.3, pi / 4)) < 1e-15 * peak);
    // Rigid counter-rotation at h = -2 Omega needs no pressure at all.
    for (double phi : {-1.2, -0.3, 0.0, 0.9})
        CHECK(spherical_steady_pressure(zonal(-2 * omega), params, 0.1, phi) == 0.0);
}

TEST_CASE("only the two balanced members expose a closed-form pressure") {
    const auto params = plane_params(7.3e-5, 7.3e-5);
    CHECK_THROWS_AS(spherical_steady_pressure({1e-6, 0.0, 0.0, {}}, params, 0.1, 0.2),
                    std::domain_error);
    CHECK_THROWS_AS(spherical_steady_pressure({0.0, 1e-6, 1e-6, {}}, params, 0.1, 0.2),
                    std::domain_error);
    CHECK_THROWS_AS(spherical_momentum_residual({1e-6, 0.0, 0.0, {}}, params, 0.1, 0.2),
                    std::domain_error);
}

TEST_CASE("momentum balance closes for both closed-form members") {
    const auto b_params = plane_params(0.0, 7.3e-5);
    const auto spec = b_member(1.2e-6);
    for (int n = 0; n < 200; ++n) {
        const double lambda = sample(-3.0, 3.0), phi = sample(-1.4, 1.4);
        const auto [r, scale] = spherical_momentum_residual(spec, b_params, lambda, phi);
        CHECK(norm(r) <= 1e-13 * scale + 1e-300);
    }
    const auto z_params = plane_params(7.3e-5, 7.3e-5);
    const auto zspec = zonal(20.0 / 6.39e6);
    for (int n = 0; n < 200; ++n) {
        const double lambda = sample(-3.0, 3.0), phi = sample(-1.4, 1.4);
        const auto [r, scale] = spherical_momentum_residual(zspec, z_params, lambda, phi);
        CHECK(r.x1 == 0.0);
        CHECK(std::abs(r.x2) <= 1e-13 * scale + 1e-300);
    }
}

TEST_CASE("elliptic integrals reduce to their textbook specializations") {
    CHECK(elliptic_F(0.0, 3.0) == 0.0);
    CHECK(elliptic_Pi(0.0, 2.0, 3.0) == 0.0);
    for (double z : {0.3, 0.7, -0.5})
        CHECK(elliptic_F(z, 0.0) == doctest::Approx(std::asin(z)).epsilon(1e-10));
    // k = 1 collapses F to atanh; nu = 1, k = 0 gives z / sqrt(1 - z^2); and
    // nu = k = 1 integrates (1 - xi^2)^-2 to z / (2 (1 - z^2)) + atanh(z) / 2.
    CHECK(elliptic_F(0.5, 1.0) == doctest::Approx(std::atanh(0.5)).epsilon(1e-10));
    CHECK(elliptic_Pi(0.5, 1.0, 0.0) ==
          doctest::Approx(0.5 / std::sqrt(0.75)).epsilon(1e-10));
    CHECK(elliptic_Pi(0.5, 1.0, 1.0) ==
          doctest::Approx(0.5 / (2 * 0.75) + std::atanh(0.5) / 2).epsilon(1e-10));
    // nu = 0 removes the characteristic factor entirely.
    CHECK(elliptic_Pi(0.5, 0.0, 0.8) == doctest::Approx(elliptic_F(0.5, 0.8)).epsilon(1e-12));
    // Odd in z, monotone in z.
    CHECK(elliptic_F(-0.6, 0.9) == -elliptic_F(0.6, 0.9));
    CHECK(elliptic_Pi(-0.6, 0.4, 0.9) == -elliptic_Pi(0.6, 0.4, 0.9));
    CHECK(elliptic_F(0.6, 0.9) > elliptic_F(0.3, 0.9));
}

TEST_CASE("elliptic integrals refuse singular paths") {
    CHECK_THROWS_AS(elliptic_F(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(elliptic_F(-1.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(elliptic_F(0.5, 2.5), std::domain_error);  // k |z| past 1
    CHECK_THROWS_AS(elliptic_Pi(1.0, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(elliptic_Pi(0.5, 0.5, 2.5), std::domain_error);
    CHECK_THROWS_AS(elliptic_Pi(0.6, 4.0, 0.5), std::domain_error);  // nu z^2 past 1
}

TEST_CASE("elliptic parameters follow the chart") {
    const auto ep = elliptic_params(0.8, 0.3);
    const double m = std::cos(0.8) * std::cos(0.3);
    CHECK(ep.k == doctest::Approx((1 + m) / (1 - m)).epsilon(1e-14));
    CHECK(ep.nu == ep.k);
    CHECK(ep.z == doctest::Approx(-std::tan(0.4) * std::sqrt(ep.k)).epsilon(1e-14));

    const auto mirrored = elliptic_params(-0.8, 0.3);
    CHECK(mirrored.k == ep.k);
    CHECK(mirrored.z == -ep.z);

    // z vanishes along the central meridian even though k blows up there.
    CHECK(std::abs(elliptic_params(1e-12, 0.5).z) < 1e-11);
    CHECK_THROWS_AS(elliptic_params(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(elliptic_params(0.2, 1.6), std::domain_error);
}

TEST_CASE("the spherical bearing composes the two invariants") {
    // The closed form of eta2 only converges where k^(3/2) tan(lambda/2) < 1,
    // which off the central meridian means staying at high latitude.
    const double b = 1.2e-6;
    auto constant = [](double, double) { return 42.0; };
    for (double t : {0.0, 5e4})
        for (double lambda : {0.0, 0.3, -0.35})
            CHECK(spherical_bearing(constant, t, lambda, 1.0, b) == 42.0);

    auto first = [](double e1, double) { return e1; };
    CHECK(spherical_bearing(first, 3.0e4, 0.3, 1.0, b) ==
          doctest::Approx(std::cos(1.0) * std::cos(0.3)).epsilon(1e-14));

    // eta2 reduces to b t on the central meridian and is even in lambda.
    auto second = [](double, double e2) { return e2; };
    CHECK(spherical_bearing(second, 5.0e4, 0.0, 0.5, b) == doctest::Approx(b * 5.0e4));
    const double plus = spherical_bearing(second, 0.0, 0.3, 1.0, b);
    const double minus = spherical_bearing(second, 0.0, -0.3, 1.0, b);
    CHECK(plus == doctest::Approx(minus).epsilon(1e-12));
    CHECK(std::abs(plus) > 0.0);

    // Continuity across the z = 0 shortcut at lambda = 0.
    const double at0 = spherical_bearing(second, 7.0e4, 0.0, 0.5, b);
    const double near0 = spherical_bearing(second, 7.0e4, 1e-8, 0.5, b);
    CHECK(near0 == doctest::Approx(at0).epsilon(1e-6));

    CHECK_THROWS_AS(spherical_bearing(constant, 0.0, 0.0, 0.0, b), std::domain_error);
    CHECK_THROWS_AS(spherical_bearing(constant, 0.0, 0.2, 1.6, b), std::domain_error);
}

TEST_CASE("a bearing of the invariants is stationary along the member flow") {
    // For pi1 = G(eta1) and the b-only vortex, Phi and pi1 are both functions
    // of m = cos(phi) cos(lambda), so the advection Jacobian vanishes.
    const double b = 1.2e-6;
    auto first = [](double e1, double) { return e1; };
    const double h = 1e-6;
    for (auto [lambda, phi] : {std::pair{0.3, 1.0}, {-0.5, 1.2}, {0.7, 1.3}}) {
        const double pl = (spherical_bearing(first, 0.0, lambda + h, phi, b) -
                           spherical_bearing(first, 0.0, lambda - h, phi, b)) /
                          (2 * h);
        const double pp = (spherical_bearing(first, 0.0, lambda, phi + h, b) -
                           spherical_bearing(first, 0.0, lambda, phi - h, b)) /
                          (2 * h);
        const double phi_l = -b * std::sin(lambda) * std::cos(phi);
        const double phi_p = -b * std::cos(lambda) * std::sin(phi);
        const double jac = phi_p * pl - phi_l * pp;
        const double scale = std::abs(phi_p * pl) + std::abs(phi_l * pp) + 1e-30;
        CHECK(std::abs(jac) <= 1e-8 * scale);
    }
}

TEST_CASE("the bearing gradient dies off toward the vortex center") {
    // Along the central meridian pi1 = G(cos phi, b t), so the latitudinal
    // gradient is G_1 sin(phi): it shrinks linearly approaching the center.
    const double b = 1.2e-6;
    auto G = [](double e1, double e2) { return e1 + e2; };
    auto grad_phi = [&](double rho) {
        const double h = rho / 10.0;
        return (spherical_bearing(G, 2.0e4, 0.0, rho + h, b) -
                spherical_bearing(G, 2.0e4, 0.0, rho - h, b)) /
               (2 * h);
    };
    const double g2 = std::abs(grad_phi(1e-2));
    const double g3 = std::abs(grad_phi(1e-3));
    const double g4 = std::abs(grad_phi(1e-4));
    CHECK(g2 > g3);
    CHECK(g3 > g4);
    CHECK(g2 == doctest::Approx(std::sin(1e-2)).epsilon(1e-3).scale(0.0));
    CHECK(g4 == doctest::Approx(std::sin(1e-4)).epsilon(1e-3).scale(0.0));
}
