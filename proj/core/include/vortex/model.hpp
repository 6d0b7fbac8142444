#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "vortex/vec2.hpp"

namespace vortex::model {

// Planetary and gas constants plus everything derivable from them.
// Immutable after construction; derive via derive_params / derive_params_c0.
struct PhysicalParams {
    double omega;         // planetary angular velocity, rad/s
    double earth_radius;  // m
    double phi0;          // reference latitude, rad
    double l0;            // Coriolis parameter at phi0, 1/s
    double beta;          // meridional Coriolis gradient, 1/(m s)
    double gamma3d;       // 3D adiabatic exponent
    double gamma;         // 2D adiabatic exponent, (2*gamma3d - 1)/gamma3d
    double state_const;   // C in P = C rho^gamma
    double c0;            // pressure-gradient coefficient gamma/(gamma-1) C^(1/gamma)
    bool c0_overridden = false;
};

// Builds PhysicalParams from the primitive inputs, deriving l0, beta, gamma, c0.
PhysicalParams derive_params(double omega, double earth_radius, double phi0,
                             double gamma3d, double state_const);

// Same, but c0 is prescribed directly and C is back-derived from it.  Used when
// a source gives only "c0 = 0.1 (appropriate dimension)" with no state constant.
PhysicalParams derive_params_c0(double omega, double earth_radius, double phi0,
                                double gamma3d, double c0);

struct LPlane {
    double l0;
};
struct BetaPlane {
    double l0;
    double beta;
};
struct Sphere {
    double omega;
};

// l(x): constant on the l-plane, affine in x2 on the beta-plane, 2*Omega*sin(lat)
// on the sphere (position given as (longitude, latitude) in radians there).
using CoriolisModel = std::variant<LPlane, BetaPlane, Sphere>;

double coriolis_at(const CoriolisModel& m, Vec2 position);

// The reference grids are stated in nondimensional units; these are the stated
// equivalences (grid step 0.64 <-> 12.8 km, time step 0.0005 <-> 10 s).
namespace units {
inline constexpr double space = 20e3;   // m per space unit
inline constexpr double time = 2e4;     // s per time unit
inline constexpr double velocity = space / time;  // m/s per velocity unit (= 1)

constexpr double si_length(double space_units) { return space_units * space; }
constexpr double si_time(double time_units) { return time_units * time; }
constexpr double to_space_units(double meters) { return meters / space; }
constexpr double to_time_units(double seconds) { return seconds / time; }
}  // namespace units

enum class CoriolisKind { l, beta, sphere };

// Contents of a "key = value" configuration file.  Defaults reproduce the
// reference mid-latitude setup.
struct ModelConfig {
    double omega = 7.3e-5;
    double radius = 6.39e6;
    double phi0_deg = 30.0;
    double gamma3d = 1.4;
    std::optional<double> c0;  // set -> override path
    CoriolisKind coriolis = CoriolisKind::l;
};

// Accepts blank lines and '#' comments; rejects unknown keys and malformed
// values so a typo cannot silently fall back to a default.
ModelConfig parse_config(std::istream& in);
ModelConfig parse_config_file(const std::string& path);

// C fitted to sea-level air (P = 101325 Pa at rho = 1.225 kg/m^3) for the given
// exponent; used when a config neither overrides c0 nor supplies C.
double sea_level_state_const(double gamma);

PhysicalParams params_from(const ModelConfig& cfg);
CoriolisModel coriolis_from(const ModelConfig& cfg, const PhysicalParams& p);

}  // namespace vortex::model
