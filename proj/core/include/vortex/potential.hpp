#pragma once

#include <variant>

#include "vortex/model.hpp"
#include "vortex/vec2.hpp"

namespace vortex {

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

constexpr Vec2 apply(const Mat2& m, Vec2 v) {
    return {m.a11 * v.x1 + m.a12 * v.x2, m.a21 * v.x1 + m.a22 * v.x2};
}

// l0 * L, the rotation part of the momentum equation.
constexpr Mat2 coriolis_matrix(double l0) { return {0.0, -l0, l0, 0.0}; }

namespace potential {

struct Linear {
    double b0;  // angular-velocity scale, 1/s
};
struct Gaussian {
    double B0;     // potential amplitude, m^2/s
    double sigma;  // localization rate, 1/m^2
};
struct PowerLaw {
    double a;      // amplitude, m^2/s
    double sigma;  // localization rate, 1/m^2
    double k;      // decay exponent, > 0
};

// A radial vortex potential.  All three families have Phi = Phi(r), so the
// velocity u = (Phi_x2, -Phi_x1) is g(r^2) * (x2, -x1) for a family-specific
// angular rate g; everything downstream is written in terms of g and its
// s = r^2 derivatives, which stay smooth through the origin.
struct VortexSpec {
    std::variant<Linear, Gaussian, PowerLaw> family;

    double b0() const;  // center angular rate g(0)
};

VortexSpec linear(double b0);
VortexSpec gaussian(double B0, double sigma);
VortexSpec power_law(double a, double sigma, double k);

// g(s), dg/ds, d^2g/ds^2 at s = r^2.
struct RadialRate {
    double g;
    double gs;
    double gss;
};
RadialRate angular_rate(const VortexSpec& spec, double s);

Vec2 velocity(const VortexSpec& spec, Vec2 x);

// Partial derivatives of Phi up to third order, from the closed-form family
// expressions (no finite differences).
struct PhiDerivs {
    double p1, p2;
    double p11, p12, p22;
    double p111, p112, p122, p222;
};
PhiDerivs phi_derivatives(const VortexSpec& spec, Vec2 x);

// Left-minus-right of the master equation in the inner-product form
// u.((u.grad)u + Au); identically zero for every radial family when A is a
// rotation matrix.  master_scale gives the magnitude of the terms that cancel,
// for relative-error reporting.
double master_residual(const VortexSpec& spec, const Mat2& A, Vec2 x);
double master_scale(const VortexSpec& spec, const Mat2& A, Vec2 x);

// Scalar curl of (u.grad)u + Au; zero exactly when the steady pressure exists.
double curl_compatibility_residual(const VortexSpec& spec, const Mat2& A, Vec2 x);

// Steady pressure pi0 balancing (u.grad)u + l0 L u + c0 grad(pi0) = 0.
// Linear: b0(b0 - l0)/(2 c0) r^2 (zero at the center); the b0 = l0 member is
// the pure inertial rotation, which needs no pressure gradient at all.
// Gaussian: (1/c0)(-1/2 B0^2 sigma e^{-sigma r^2} + l0 B0 e^{-sigma r^2/2}),
// which decays to zero at infinity.
double steady_pressure(const VortexSpec& spec, const model::PhysicalParams& p, Vec2 x);

struct ZeroBearing {};
struct LinearSlope {
    double M10;  // initial gradient components, pi units per meter
    double M20;
    double K0;
};
struct LocalizedSlope {
    double R0;
    double M10;
    double M20;
    double K0;
    double sigma0;  // envelope rate, 1/m^2
    double sigma;   // localization rate of the paired vortex
    double B0;      // amplitude of the paired vortex
};

struct BearingField {
    std::variant<ZeroBearing, LinearSlope, LocalizedSlope> family;
};

BearingField zero_bearing();
BearingField linear_slope(double M10, double M20, double K0);
BearingField localized_slope(double R0, double M10, double M20, double K0,
                             double sigma0, const VortexSpec& paired);

// The rotating gradient (M1(t), M2(t)); rate b0 for LinearSlope comes from the
// paired vortex at the call site, LocalizedSlope carries its own B0*sigma.
Vec2 slope_gradient(double M10, double M20, double b0, double t);

double bearing_at(const BearingField& field, double t, Vec2 x, double b0);
Vec2 bearing_gradient(const BearingField& field, double t, Vec2 x, double b0);
Vec2 bearing_gradient_at_origin(const BearingField& field, double t, double b0);

}  // namespace potential
}  // namespace vortex
