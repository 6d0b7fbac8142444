#pragma once

#include <functional>

#include "vortex/model.hpp"
#include "vortex/vec2.hpp"

namespace vortex::sphere {

// Outer profile f of the family Phi = f(cos(phi)(a sin(lambda) + b cos(lambda))
// + h sin(phi)); derivatives are supplied analytically because the master
// residual must not be polluted by finite differences.
struct OuterProfile {
    std::function<double(double)> f = [](double w) { return w; };
    std::function<double(double)> df = [](double) { return 1.0; };
    std::function<double(double)> d2f = [](double) { return 0.0; };
};

struct SphericalVortexSpec {
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    OuterProfile profile{};
};

// (u, v) = (Phi_phi, -Phi_lambda / cos phi); the cos phi division cancels
// analytically for the family, so the b-only member is exactly
// u = -b cos(lambda) sin(phi), v = b sin(lambda).
Vec2 spherical_velocity(const SphericalVortexSpec& spec, double lambda, double phi);

// Residual of the spherical master equation; zero to round-off for every
// family member.  spherical_master_scale reports the cancelling magnitude.
double spherical_master_residual(const SphericalVortexSpec& spec, double lambda, double phi);
double spherical_master_scale(const SphericalVortexSpec& spec, double lambda, double phi);

// Closed-form pi0 (C = 0 gauge): the b-only member balances against A = l0 L,
// the zonal (a = b = 0) member against the full A = 2 Omega sin(phi) L.  Other
// members have no closed form.
double spherical_steady_pressure(const SphericalVortexSpec& spec,
                                 const model::PhysicalParams& params, double lambda,
                                 double phi);

// Steady-momentum-balance residual of (u, pi0) in the spherical chart, with the
// A matching the member as above; scale collects the magnitudes of the terms.
struct MomentumResidual {
    Vec2 r;
    double scale;
};
MomentumResidual spherical_momentum_residual(const SphericalVortexSpec& spec,
                                             const model::PhysicalParams& params,
                                             double lambda, double phi);

// Incomplete elliptic integrals in the source's displayed algebraic form,
// evaluated by adaptive quadrature on their real-analytic domain (odd in z).
// The modulus here routinely exceeds 1, so no Legendre-form identities apply.
double elliptic_F(double z, double k, double abs_tol = 1e-12);
double elliptic_Pi(double z, double nu, double k, double abs_tol = 1e-12);

struct EllipticParams {
    double k;   // modulus, = nu
    double nu;  // characteristic
    double z;   // argument, -tan(lambda/2) sqrt(k)
};
// k = nu = (1 + cos(lambda)cos(phi)) / (1 - cos(lambda)cos(phi)); rejects the
// chart origin where the ratio blows up.
EllipticParams elliptic_params(double lambda, double phi);

// pi1 = G(cos phi cos lambda, b t + cos phi sin 2 lambda (E_F(z,k) - 2 E_P(z,k,k))).
double spherical_bearing(const std::function<double(double, double)>& G, double t,
                         double lambda, double phi, double b);

}  // namespace vortex::sphere
