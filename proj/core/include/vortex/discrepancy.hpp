#pragma once

#include <span>
#include <string>
#include <vector>

#include "vortex/trajectory.hpp"

namespace vortex::discrepancy {

using trajectory::TrajectoryProblem;
using trajectory::TrajectoryState;

// The paper's default frame rotation: l0 L on the plane, 2 Omega sin(X2(0)) L
// on the sphere.  Exposed because a different A changes (and can shrink) Q.
Mat2 default_A(const TrajectoryProblem& problem);

// Q(t, x) = -(l(X) - l(X+x)) L Xd + (l(X+x) L - A) u(x) - c0 [grad pi1|_0 - grad pi1(t, x)],
// the residual left by the frozen-vortex ansatz at offset x from the center.
Vec2 q_field(const TrajectoryProblem& problem, const TrajectoryState& state, Vec2 x,
             const Mat2& A);

struct NeighborhoodSample {
    double t;
    double r_delta;  // largest sampled radius with sup|Q| below delta
    double sup_q;    // sup|Q| over the full search ball
};

// Dense polar sampling (grid_n radii x grid_n angles) of |Q| around each
// trajectory sample; r_delta realizes the D(delta) neighborhood radius.
std::vector<NeighborhoodSample> delta_neighborhood(const TrajectoryProblem& problem,
                                                   std::span<const TrajectoryState> states,
                                                   double delta, double search_radius,
                                                   int grid_n, const Mat2& A);
std::vector<NeighborhoodSample> delta_neighborhood(const TrajectoryProblem& problem,
                                                   std::span<const TrajectoryState> states,
                                                   double delta, double search_radius,
                                                   int grid_n = 64);

void neighborhood_to_csv(std::span<const NeighborhoodSample> rows, const std::string& path);

}  // namespace vortex::discrepancy
