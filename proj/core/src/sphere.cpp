#include "vortex/sphere.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vortex::sphere {

namespace {

void check_chart(double lambda, double phi) {
    if (!(std::abs(phi) < std::numbers::pi / 2))
        throw std::domain_error("spherical chart requires |phi| < pi/2");
    if (!(std::abs(lambda) < std::numbers::pi))
        throw std::domain_error("spherical chart requires |lambda| < pi");
}

// Family argument w and its chart derivatives; w_phiphi = -w exactly.
struct FamilyArg {
    double w, w_l, w_p, w_ll, w_lp;
};

FamilyArg family_arg(const SphericalVortexSpec& s, double lambda, double phi) {
    const double c = std::cos(phi), sn = std::sin(phi);
    const double p = s.a * std::sin(lambda) + s.b * std::cos(lambda);
    const double pp = s.a * std::cos(lambda) - s.b * std::sin(lambda);
    return {c * p + s.h * sn, c * pp, -sn * p + s.h * c, -c * p, -sn * pp};
}

}  // namespace

Vec2 spherical_velocity(const SphericalVortexSpec& spec, double lambda, double phi) {
    check_chart(lambda, phi);
    const FamilyArg fa = family_arg(spec, lambda, phi);
    const double fp = spec.profile.df(fa.w);
    // v = -Phi_lambda / cos(phi); Phi_lambda carries a cos(phi) factor, so the
    // quotient is evaluated in its cancelled form and stays finite chart-wide.
    const double pp = spec.a * std::cos(lambda) - spec.b * std::sin(lambda);
    return {fp * fa.w_p, -fp * pp};
}

namespace {

struct MasterTerms {
    double t1, t2, t3;
};

MasterTerms master_terms(const SphericalVortexSpec& spec, double lambda, double phi) {
    const double c = std::cos(phi), sn = std::sin(phi);
    const FamilyArg fa = family_arg(spec, lambda, phi);
    const double fp = spec.profile.df(fa.w);
    const double fpp = spec.profile.d2f(fa.w);

    const double Pl = fp * fa.w_l;
    const double Pp = fp * fa.w_p;
    const double Pll = fpp * fa.w_l * fa.w_l + fp * fa.w_ll;
    const double Plp = fpp * fa.w_l * fa.w_p + fp * fa.w_lp;
    const double Ppp = fpp * fa.w_p * fa.w_p + fp * (-fa.w);

    const double c2 = c * c;
    return {Plp * (Pp * Pp - Pl * Pl / c2),
            (Pll / c2 - Ppp) * Pl * Pp,
            -sn / (c2 * c) * Pl * Pl * Pl};
}

}  // namespace

double spherical_master_residual(const SphericalVortexSpec& spec, double lambda, double phi) {
    check_chart(lambda, phi);
    const auto [t1, t2, t3] = master_terms(spec, lambda, phi);
    return t1 + t2 + t3;
}

double spherical_master_scale(const SphericalVortexSpec& spec, double lambda, double phi) {
    check_chart(lambda, phi);
    const auto [t1, t2, t3] = master_terms(spec, lambda, phi);
    return std::abs(t1) + std::abs(t2) + std::abs(t3);
}

double spherical_steady_pressure(const SphericalVortexSpec& spec,
                                 const model::PhysicalParams& params, double lambda,
                                 double phi) {
    check_chart(lambda, phi);
    if (spec.a == 0.0 && spec.b == 0.0) {
        // Zonal flow: balances the full 2 Omega sin(phi) rotation.
        return spec.h * (spec.h + 2.0 * params.omega) * std::cos(2.0 * phi) /
               (4.0 * params.c0);
    }
    if (spec.a == 0.0 && spec.h == 0.0) {
        const double m = std::cos(lambda) * std::cos(phi);
        return -spec.b * m * (spec.b * m + 2.0 * params.l0) / (2.0 * params.c0);
    }
    throw std::domain_error(
        "closed-form pi0 exists only for the b-only member (A = l0 L) and the "
        "zonal member (A = 2 Omega sin(phi) L)");
}

MomentumResidual spherical_momentum_residual(const SphericalVortexSpec& spec,
                                             const model::PhysicalParams& params,
                                             double lambda, double phi) {
    check_chart(lambda, phi);
    const double c = std::cos(phi), sn = std::sin(phi);
    const double c0 = params.c0;

    if (spec.a == 0.0 && spec.b == 0.0) {
        const double h = spec.h;
        const double u = h * c;
        const double adv = u * u * sn / c;
        const double cor = 2.0 * params.omega * sn * u;
        const double prs = c0 * (-h * (h + 2.0 * params.omega) * std::sin(2.0 * phi) /
                                 (2.0 * c0));
        return {{0.0, adv + cor + prs},
                std::abs(adv) + std::abs(cor) + std::abs(prs)};
    }
    if (spec.a == 0.0 && spec.h == 0.0) {
        const double b = spec.b, l0 = params.l0;
        const double cl = std::cos(lambda), sl = std::sin(lambda);
        const double u = -b * cl * sn, v = b * sl;
        const double u_l = b * sl * sn, u_p = -b * cl * c;
        const double v_l = b * cl, v_p = 0.0;
        const double m = cl * c, m_l = -sl * c, m_p = -cl * sn;
        const double pi_l = -(b / c0) * (b * m + l0) * m_l;
        const double pi_p = -(b / c0) * (b * m + l0) * m_p;

        const double r1a = u / c * u_l, r1b = v * u_p, r1c = -u * v * sn / c,
                     r1d = -l0 * v, r1e = c0 / c * pi_l;
        const double r2a = u / c * v_l, r2b = v * v_p, r2c = u * u * sn / c,
                     r2d = l0 * u, r2e = c0 * pi_p;
        return {{r1a + r1b + r1c + r1d + r1e, r2a + r2b + r2c + r2d + r2e},
                std::abs(r1a) + std::abs(r1b) + std::abs(r1c) + std::abs(r1d) +
                    std::abs(r1e) + std::abs(r2a) + std::abs(r2b) + std::abs(r2c) +
                    std::abs(r2d) + std::abs(r2e)};
    }
    throw std::domain_error(
        "momentum residual is defined for the members with closed-form pi0");
}

namespace {

double quadrature(const std::function<double(double)>& f, double upper, double abs_tol) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, upper, 15, abs_tol);
}

void check_elliptic_path(double za, double k, const char* who) {
    if (!(za < 1.0))
        throw std::domain_error(std::string(who) + ": integrand singular, xi^2 reaches 1 on [0, |z|]");
    if (!(k * za < 1.0))
        throw std::domain_error(std::string(who) +
                                ": integrand singular, k^2 xi^2 reaches 1 on [0, |z|]");
}

}  // namespace

double elliptic_F(double z, double k, double abs_tol) {
    if (z == 0.0) return 0.0;
    const double za = std::abs(z);
    check_elliptic_path(za, k, "elliptic_F");
    const double k2 = k * k;
    const double val = quadrature(
        [k2](double xi) {
            return 1.0 / (std::sqrt(1.0 - xi * xi) * std::sqrt(1.0 - k2 * xi * xi));
        },
        za, abs_tol);
    return std::copysign(val, z);
}

double elliptic_Pi(double z, double nu, double k, double abs_tol) {
    if (z == 0.0) return 0.0;
    const double za = std::abs(z);
    check_elliptic_path(za, k, "elliptic_Pi");
    if (nu > 0.0 && !(nu * za * za < 1.0))
        throw std::domain_error("elliptic_Pi: integrand singular, nu xi^2 reaches 1 on [0, |z|]");
    const double k2 = k * k;
    const double val = quadrature(
        [k2, nu](double xi) {
            const double xi2 = xi * xi;
            return 1.0 /
                   ((1.0 - nu * xi2) * std::sqrt(1.0 - xi2) * std::sqrt(1.0 - k2 * xi2));
        },
        za, abs_tol);
    return std::copysign(val, z);
}

EllipticParams elliptic_params(double lambda, double phi) {
    check_chart(lambda, phi);
    const double m = std::cos(lambda) * std::cos(phi);
    if (!(1.0 - m > 0.0))
        throw std::domain_error("elliptic parameters blow up at the chart origin");
    const double k = (1.0 + m) / (1.0 - m);
    // (cos(lambda) - 1)/sin(lambda) == -tan(lambda/2): same function, but the
    // right side is finite at lambda = 0 (the 0/0 there is removable).
    const double z = -std::tan(0.5 * lambda) * std::sqrt(k);
    return {k, k, z};
}

double spherical_bearing(const std::function<double(double, double)>& G, double t,
                         double lambda, double phi, double b) {
    const EllipticParams ep = elliptic_params(lambda, phi);
    const double eta1 = std::cos(phi) * std::cos(lambda);
    double eta2 = b * t;
    if (ep.z != 0.0) {
        eta2 += std::cos(phi) * std::sin(2.0 * lambda) *
                (elliptic_F(ep.z, ep.k) - 2.0 * elliptic_Pi(ep.z, ep.nu, ep.k));
    }
    return G(eta1, eta2);
}

}  // namespace vortex::sphere
