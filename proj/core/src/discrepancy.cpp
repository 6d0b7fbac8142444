#include "vortex/discrepancy.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "vortex/csv.hpp"

namespace vortex::discrepancy {

Mat2 default_A(const TrajectoryProblem& problem) {
    if (problem.geometry == trajectory::Geometry::sphere) {
        const auto& s = std::get<model::Sphere>(problem.coriolis);
        return coriolis_matrix(2.0 * s.omega * std::sin(problem.initial.X.x2));
    }
    if (const auto* lp = std::get_if<model::LPlane>(&problem.coriolis))
        return coriolis_matrix(lp->l0);
    return coriolis_matrix(std::get<model::BetaPlane>(problem.coriolis).l0);
}

Vec2 q_field(const TrajectoryProblem& problem, const TrajectoryState& state, Vec2 x,
             const Mat2& A) {
    const double b0 = problem.vortex.b0();
    const double l_center = model::coriolis_at(problem.coriolis, state.X);
    const double l_offset = model::coriolis_at(problem.coriolis, state.X + x);
    const Vec2 u = potential::velocity(problem.vortex, x);
    const Vec2 grad0 = potential::bearing_gradient_at_origin(problem.bearing, state.t, b0);
    const Vec2 gradx = potential::bearing_gradient(problem.bearing, state.t, x, b0);

    return -(l_center - l_offset) * lrot(state.V) + (l_offset * lrot(u) - apply(A, u)) -
           problem.c0 * (grad0 - gradx);
}

std::vector<NeighborhoodSample> delta_neighborhood(const TrajectoryProblem& problem,
                                                   std::span<const TrajectoryState> states,
                                                   double delta, double search_radius,
                                                   int grid_n, const Mat2& A) {
    if (states.empty()) throw std::invalid_argument("delta_neighborhood: empty trajectory");
    if (delta <= 0.0) throw std::invalid_argument("delta_neighborhood: delta must be > 0");
    if (search_radius <= 0.0 || grid_n < 1)
        throw std::invalid_argument("delta_neighborhood: bad sampling parameters");

    std::vector<NeighborhoodSample> out;
    out.reserve(states.size());
    for (const auto& st : states) {
        double sup_all = 0.0;
        double r_delta = 0.0;
        bool still_below = true;
        for (int i = 0; i < grid_n; ++i) {
            const double r = search_radius * (i + 1) / grid_n;
            double ring_sup = 0.0;
            for (int j = 0; j < grid_n; ++j) {
                const double ang = 2.0 * std::numbers::pi * j / grid_n;
                const Vec2 x{r * std::cos(ang), r * std::sin(ang)};
                ring_sup = std::max(ring_sup, norm(q_field(problem, st, x, A)));
            }
            sup_all = std::max(sup_all, ring_sup);
            if (still_below && sup_all < delta)
                r_delta = r;
            else
                still_below = false;
        }
        out.push_back({st.t, r_delta, sup_all});
    }
    return out;
}

std::vector<NeighborhoodSample> delta_neighborhood(const TrajectoryProblem& problem,
                                                   std::span<const TrajectoryState> states,
                                                   double delta, double search_radius,
                                                   int grid_n) {
    return delta_neighborhood(problem, states, delta, search_radius, grid_n,
                              default_A(problem));
}

void neighborhood_to_csv(std::span<const NeighborhoodSample> rows, const std::string& path) {
    if (rows.empty()) throw std::invalid_argument("neighborhood_to_csv: empty sequence");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << "t,r_delta,sup_q\n";
    for (const auto& r : rows) {
        csv::write_field(os, r.t, false);
        csv::write_field(os, r.r_delta, false);
        csv::write_field(os, r.sup_q, true);
    }
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace vortex::discrepancy
