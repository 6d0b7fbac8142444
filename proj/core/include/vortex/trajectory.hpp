#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vortex/model.hpp"
#include "vortex/potential.hpp"
#include "vortex/vec2.hpp"

namespace vortex::trajectory {

struct TrajectoryState {
    double t = 0.0;
    Vec2 X;  // m on the plane, (longitude, latitude) rad on the sphere
    Vec2 V;  // m/s on the plane, rad/s on the sphere
};

enum class Geometry { plane, sphere };

struct TrajectoryProblem {
    model::CoriolisModel coriolis;
    potential::BearingField bearing;
    potential::VortexSpec vortex;
    double c0;
    TrajectoryState initial;
    double horizon;  // s
    Geometry geometry = Geometry::plane;
};

enum class StopReason { completed, velocity_bound, latitude_cap, step_underflow };

struct TrajectoryResult {
    std::vector<TrajectoryState> states;
    StopReason reason = StopReason::completed;
    double t_star = 0.0;  // first invalid time when reason != completed
};

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-8;  // m (plane) / rad (sphere)
    // Requested output times (dense interpolation); empty -> the accepted steps.
    std::vector<double> sample_times;
};

// Integrates Xdd + l(X) L Xd + c0 grad(pi1)|_0 = 0 with a Dormand-Prince 5(4)
// pair, PI step-size control, and 4th-order dense output.  Blow-up (|V| above
// 1e3 m/s on the plane, 1 rad/s on the sphere), leaving the latitude chart
// (|X2| >= pi/2 - 0.05), or step underflow stops early with the reason and the
// states collected so far.
TrajectoryResult integrate(const TrajectoryProblem& problem, const IntegrateOptions& opts = {});

// The superposition-of-two-circular-motions solution for LPlane + rotating
// linear slope gradient (frequencies l and b0).  Callable at any t.
class LPlaneClosedForm {
  public:
    explicit LPlaneClosedForm(const TrajectoryProblem& problem);
    TrajectoryState operator()(double t) const;

  private:
    double l_, b0_;
    double cx1_, cx2_;  // fixed center of the two-circle superposition
    double sl1_, sl2_;  // inertial-circle amplitudes
    double ab1_, ab2_;  // bearing-circle amplitudes
};

LPlaneClosedForm closed_form_lplane(const TrajectoryProblem& problem);

void trajectory_to_csv(std::span<const TrajectoryState> states, const std::string& path);

}  // namespace vortex::trajectory
