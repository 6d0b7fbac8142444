#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "presets.hpp"
#include "sidecar.hpp"
#include "vortex/csv.hpp"
#include "vortex/discrepancy.hpp"
#include "vortex/grid_solver.hpp"
#include "vortex/model.hpp"
#include "vortex/potential.hpp"
#include "vortex/sphere.hpp"
#include "vortex/trajectory.hpp"

namespace fs = std::filesystem;
using namespace vortex;
using vortexctl::Preset;
using vortexctl::Sidecar;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Loaded {
    Preset preset;
    model::PhysicalParams params;
    model::CoriolisModel coriolis;
};

Loaded load_setup(const std::string& preset_name, const std::string& config_path,
                  const std::string& model_override) {
    Preset p = vortexctl::preset_by_name(preset_name);
    if (!config_path.empty()) p.config = model::parse_config_file(config_path);
    if (!model_override.empty()) {
        if (model_override == "l") p.config.coriolis = model::CoriolisKind::l;
        else if (model_override == "beta") p.config.coriolis = model::CoriolisKind::beta;
        else if (model_override == "sphere") p.config.coriolis = model::CoriolisKind::sphere;
        else throw std::invalid_argument("--model must be one of l|beta|sphere");
    }
    Loaded out;
    out.preset = std::move(p);
    out.params = model::params_from(out.preset.config);
    out.coriolis = model::coriolis_from(out.preset.config, out.params);
    return out;
}

const char* coriolis_name(model::CoriolisKind k) {
    switch (k) {
        case model::CoriolisKind::l: return "l";
        case model::CoriolisKind::beta: return "beta";
        case model::CoriolisKind::sphere: return "sphere";
    }
    return "?";
}

const char* reason_name(trajectory::StopReason r) {
    switch (r) {
        case trajectory::StopReason::completed: return "completed";
        case trajectory::StopReason::velocity_bound: return "velocity blow-up";
        case trajectory::StopReason::latitude_cap: return "latitude cap";
        case trajectory::StopReason::step_underflow: return "step underflow";
    }
    return "?";
}

Sidecar base_sidecar(const std::string& command, const Loaded& L) {
    Sidecar sc;
    sc.add("command", command);
    sc.add("preset", L.preset.name);
    const auto& c = L.preset.config;
    sc.add("omega", c.omega);
    sc.add("radius", c.radius);
    sc.add("phi0_deg", c.phi0_deg);
    sc.add("gamma3d", c.gamma3d);
    if (c.c0) {
        sc.add("c0", *c.c0);
        sc.add("c0_overridden", true);
    } else {
        sc.add("c0", L.params.c0);
        sc.add("c0_overridden", false);
    }
    sc.add("coriolis", coriolis_name(c.coriolis));
    sc.add("l0", L.params.l0);
    sc.add("beta", L.params.beta);
    sc.add("B0", L.preset.B0);
    sc.add("sigma", L.preset.sigma);
    if (L.preset.zero_bearing) {
        sc.add("bearing", "zero");
    } else {
        sc.add("bearing", "localized-slope");
        sc.add("sigma0", L.preset.sigma0);
        sc.add("M10", L.preset.M10);
        sc.add("M20", L.preset.M20);
    }
    for (const auto& [k, v] : L.preset.notes) sc.add(k, v);
    return sc;
}

std::vector<double> hourly_samples(double horizon) {
    std::vector<double> t;
    for (double s = 0.0; s < horizon; s += 3600.0) t.push_back(s);
    t.push_back(horizon);
    return t;
}

trajectory::TrajectoryProblem make_problem(const Loaded& L, double horizon) {
    trajectory::TrajectoryProblem prob;
    prob.coriolis = L.coriolis;
    prob.bearing = vortexctl::preset_bearing(L.preset);
    prob.vortex = vortexctl::preset_vortex(L.preset);
    prob.c0 = L.params.c0;
    prob.horizon = horizon;
    if (std::holds_alternative<model::Sphere>(L.coriolis)) {
        prob.geometry = trajectory::Geometry::sphere;
        prob.initial = {0.0,
                        {0.0, L.params.phi0},
                        {L.preset.v0.x1 / L.params.earth_radius,
                         L.preset.v0.x2 / L.params.earth_radius}};
    } else {
        prob.initial = {0.0, {0.0, 0.0}, L.preset.v0};
    }
    return prob;
}

// ---------------------------------------------------------------- trajectory

struct TrajectoryOpts {
    std::string preset = "sec45";
    std::string config;
    std::string model;
    std::string out = "trajectory.csv";
    bool closed_form = false;
    double horizon_days = -1.0;
};

int run_trajectory(const TrajectoryOpts& o) {
    Loaded L;
    try {
        L = load_setup(o.preset, o.config, o.model);
        if (o.closed_form && L.preset.config.coriolis != model::CoriolisKind::l)
            throw std::invalid_argument("--closed-form requires the l-plane model");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const double days = o.horizon_days >= 0.0 ? o.horizon_days : L.preset.horizon_days;
        const double horizon = days * 86400.0;
        auto prob = make_problem(L, horizon);

        trajectory::IntegrateOptions iopts;
        if (horizon > 0.0) iopts.sample_times = hourly_samples(horizon);
        const auto res = trajectory::integrate(prob, iopts);
        trajectory::trajectory_to_csv(res.states, o.out);

        Sidecar sc = base_sidecar("trajectory", L);
        sc.add("horizon_days", days);
        sc.add("v0_1", prob.initial.V.x1);
        sc.add("v0_2", prob.initial.V.x2);
        sc.add("rel_tol", iopts.rel_tol);
        sc.add("abs_tol", iopts.abs_tol);
        sc.add("closed_form", o.closed_form);
        sc.note("out", o.out);
        sc.write(o.out + ".meta");

        if (res.reason != trajectory::StopReason::completed) {
            std::cerr << "integrator stopped early (" << reason_name(res.reason)
                      << ") at t* = " << csv::format(res.t_star) << " s\n";
            return kExitNumeric;
        }
        std::cout << "wrote " << o.out << " (" << res.states.size() << " rows)\n";

        if (o.closed_form) {
            const auto cf = trajectory::closed_form_lplane(prob);
            std::vector<trajectory::TrajectoryState> analytic;
            analytic.reserve(res.states.size());
            double max_dev = 0.0;
            for (const auto& s : res.states) {
                analytic.push_back(cf(s.t));
                const Vec2 d = s.X - analytic.back().X;
                max_dev = std::max(max_dev, norm(d));
            }
            fs::path cf_path(o.out);
            cf_path.replace_extension("");
            cf_path += "_closed_form.csv";
            trajectory::trajectory_to_csv(analytic, cf_path.string());
            std::cout << "wrote " << cf_path.string() << "\n";
            std::cout << "max |numeric - closed form| = " << csv::format(max_dev) << " m\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

// ------------------------------------------------------------------ simulate

struct SimulateOpts {
    std::string preset;
    std::string config;
    std::string out = ".";
    long steps = -1;
    long snapshot_every = -1;
};

int run_simulate(const SimulateOpts& o) {
    Loaded L;
    try {
        L = load_setup(o.preset, o.config, "");
        if (L.preset.nx == 0)
            throw std::invalid_argument("preset '" + o.preset +
                                        "' has no grid experiment; use a fig* preset");
        if (L.preset.config.coriolis == model::CoriolisKind::sphere)
            throw std::invalid_argument("the grid solver runs on the plane models only");
        if (o.steps < -1 || o.snapshot_every < -1)
            throw std::invalid_argument("steps and snapshot-every must be nonnegative");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        Preset& P = L.preset;
        const long steps = o.steps >= 0 ? o.steps : P.steps;
        const long snap = o.snapshot_every >= 0 ? o.snapshot_every : P.snapshot_every;

        grid::SolverConfig cfg = grid::make_config(L.params, L.coriolis, P.dt, steps);
        const grid::GridGeometry geom{P.nx, P.ny, P.dx, P.dy};
        const auto vortex_spec = vortexctl::preset_vortex(P);
        const auto bearing = vortexctl::preset_bearing(P);
        const auto initial = grid::initialize_vortex(geom, vortex_spec, bearing, P.ambient, cfg);

        const auto record = grid::run(initial, cfg, snap);

        fs::create_directories(o.out);
        const fs::path dir(o.out);
        for (const auto& s : record.snapshots) {
            char name[48];
            std::snprintf(name, sizeof name, "snapshot_%06ld.csv", s.step);
            grid::snapshot_to_csv(s.state, cfg, dir / name);
        }

        // Theoretical center: same bearing/vortex/Coriolis, launched from the
        // domain center with the ambient velocity.
        trajectory::TrajectoryProblem prob;
        prob.coriolis = L.coriolis;
        prob.bearing = bearing;
        prob.vortex = vortex_spec;
        prob.c0 = L.params.c0;
        prob.initial = {0.0, {P.nx * P.dx / 2.0, P.ny * P.dy / 2.0}, P.ambient};
        prob.horizon = steps * P.dt;
        trajectory::IntegrateOptions iopts;
        if (prob.horizon > 0.0) {
            for (const auto& s : record.snapshots) iopts.sample_times.push_back(s.time);
        }
        const auto theory = trajectory::integrate(prob, iopts);
        trajectory::trajectory_to_csv(theory.states, (dir / "theory.csv").string());

        std::ofstream centers(dir / "centers.csv");
        if (!centers) throw std::runtime_error("cannot open centers.csv for writing");
        centers << "step,t,x1,x2,theory_x1,theory_x2,deviation_cells\n";
        double max_dev_cells = 0.0;
        for (std::size_t i = 0; i < record.snapshots.size(); ++i) {
            const auto& s = record.snapshots[i];
            const Vec2 th = i < theory.states.size() ? theory.states[i].X : Vec2{};
            centers << s.step << ',';
            csv::write_field(centers, s.time, false);
            if (s.center) {
                const double dev = norm(*s.center - th) / std::min(P.dx, P.dy);
                max_dev_cells = std::max(max_dev_cells, dev);
                csv::write_field(centers, s.center->x1, false);
                csv::write_field(centers, s.center->x2, false);
                csv::write_field(centers, th.x1, false);
                csv::write_field(centers, th.x2, false);
                csv::write_field(centers, dev, true);
            } else {
                centers << "nan,nan,";
                csv::write_field(centers, th.x1, false);
                csv::write_field(centers, th.x2, false);
                centers << "nan\n";
            }
        }
        centers.close();

        std::cout << "max |tracked - theory| = " << csv::format(max_dev_cells)
                  << " cells over " << record.snapshots.size() << " snapshots\n";

        double shape = -1.0;
        if (P.zero_bearing && !record.snapshots.empty() &&
            record.snapshots.back().center) {
            // Shape metric: relative L2 distance between the initial pi anomaly
            // and the final one re-centered (whole cells) on the tracked vortex.
            const auto& s0 = record.snapshots.front().state;
            const auto& s1 = record.snapshots.back().state;
            const Vec2 ctr = *record.snapshots.back().center;
            const Vec2 origin{P.nx * P.dx / 2.0, P.ny * P.dy / 2.0};
            const int sh0 = static_cast<int>(std::lround((ctr.x1 - origin.x1) / P.dx));
            const int sh1 = static_cast<int>(std::lround((ctr.x2 - origin.x2) / P.dy));
            double num = 0.0, den = 0.0;
            for (int i = 0; i < P.nx; ++i) {
                for (int j = 0; j < P.ny; ++j) {
                    const int ii = ((i + sh0) % P.nx + P.nx) % P.nx;
                    const int jj = ((j + sh1) % P.ny + P.ny) % P.ny;
                    const double pf =
                        grid::pi_from_rho(cfg, s1.rho[s1.idx(ii, jj)]) - cfg.pi_ambient;
                    const double pi0 =
                        grid::pi_from_rho(cfg, s0.rho[s0.idx(i, j)]) - cfg.pi_ambient;
                    num += (pf - pi0) * (pf - pi0);
                    den += pi0 * pi0;
                }
            }
            shape = std::sqrt(num / den);
            std::cout << "shape metric (relative L2 vs initial) = " << csv::format(shape)
                      << "\n";
        }

        Sidecar sc = base_sidecar("simulate", L);
        sc.add("nx", P.nx);
        sc.add("ny", P.ny);
        sc.add("dx", P.dx);
        sc.add("dy", P.dy);
        sc.add("dt", P.dt);
        sc.add("steps", steps);
        sc.add("snapshot_every", snap);
        sc.add("ambient_u1", P.ambient.x1);
        sc.add("ambient_u2", P.ambient.x2);
        sc.add("pi_ambient", cfg.pi_ambient);
        sc.add("flux_exponent", cfg.flux_exponent);
        sc.add("flux_coefficient", cfg.flux_coefficient);
        sc.add("momentum_form_source", cfg.momentum_form_source);
        sc.add("eps4", cfg.eps4);
        sc.add("boundary", cfg.boundary == grid::Boundary::neumann ? "neumann" : "periodic");
        sc.note("max_center_deviation_cells", max_dev_cells);
        if (shape >= 0.0) sc.note("shape_metric", shape);
        sc.write(dir / "run_meta.txt");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

// --------------------------------------------------------------- discrepancy

struct DiscrepancyOpts {
    std::string preset = "sec45";
    std::string config;
    std::string model;
    std::string out = "discrepancy.csv";
    double delta = 0.0;
    double search_radius = 5e5;
    int grid_n = 64;
    double horizon_days = -1.0;
};

int run_discrepancy(const DiscrepancyOpts& o) {
    Loaded L;
    try {
        L = load_setup(o.preset, o.config, o.model);
        if (o.delta < 0.0) throw std::invalid_argument("--delta must be >= 0");
        if (o.search_radius <= 0.0)
            throw std::invalid_argument("--search-radius must be > 0");
        if (o.grid_n < 2) throw std::invalid_argument("--grid-n must be at least 2");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const double days = o.horizon_days >= 0.0 ? o.horizon_days : L.preset.horizon_days;
        const double horizon = days * 86400.0;
        auto prob = make_problem(L, horizon);
        trajectory::IntegrateOptions iopts;
        if (horizon > 0.0) iopts.sample_times = hourly_samples(horizon);
        const auto res = trajectory::integrate(prob, iopts);
        if (res.reason != trajectory::StopReason::completed) {
            std::cerr << "integrator stopped early (" << reason_name(res.reason)
                      << ") at t* = " << csv::format(res.t_star) << " s\n";
            return kExitNumeric;
        }
        const auto rows = discrepancy::delta_neighborhood(prob, res.states, o.delta,
                                                          o.search_radius, o.grid_n);
        discrepancy::neighborhood_to_csv(rows, o.out);

        double max_sup = 0.0, min_r = o.search_radius;
        for (const auto& r : rows) {
            max_sup = std::max(max_sup, r.sup_q);
            min_r = std::min(min_r, r.r_delta);
        }
        std::cout << "wrote " << o.out << " (" << rows.size() << " rows); max sup|Q| = "
                  << csv::format(max_sup) << ", min r_delta = " << csv::format(min_r)
                  << "\n";

        Sidecar sc = base_sidecar("discrepancy", L);
        sc.add("delta", o.delta);
        sc.add("search_radius", o.search_radius);
        sc.add("grid_n", o.grid_n);
        sc.add("horizon_days", days);
        sc.note("out", o.out);
        sc.write(o.out + ".meta");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

// -------------------------------------------------------------- sphere-check

struct SphereCheckOpts {
    std::string config;
    std::string out = "sphere_check.csv";
    int points = 10000;
    unsigned seed = 20260814;
};

int run_sphere_check(const SphereCheckOpts& o) {
    Loaded L;
    try {
        L = load_setup("sec45", o.config, "");
        if (o.points < 1) throw std::invalid_argument("--points must be positive");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const double R = L.params.earth_radius;
        const double c0 = L.params.c0;
        const auto params_rest = model::derive_params_c0(0.0, R, L.params.phi0,
                                                         L.params.gamma3d, c0);

        sphere::SphericalVortexSpec b_member{0.0, 1.2e-6, 0.0, {}};
        sphere::SphericalVortexSpec mixed{0.9e-6, 1.2e-6, 0.7e-6, {}};
        sphere::SphericalVortexSpec shaped{0.9e-6, 1.2e-6, 0.7e-6,
                                           {[](double w) { return w + 0.3 * w * w; },
                                            [](double w) { return 1.0 + 0.6 * w; },
                                            [](double) { return 0.6; }}};
        sphere::SphericalVortexSpec zonal{0.0, 0.0, 20.0 / R, {}};

        struct Case {
            const char* name;
            std::function<double(double, double)> rel_residual;
        };
        auto master_case = [](const sphere::SphericalVortexSpec& s) {
            return [s](double lam, double phi) {
                const double res = sphere::spherical_master_residual(s, lam, phi);
                const double scale = sphere::spherical_master_scale(s, lam, phi);
                return scale > 0.0 ? std::abs(res) / scale : 0.0;
            };
        };
        auto momentum_case = [](const sphere::SphericalVortexSpec& s,
                                const model::PhysicalParams& p) {
            return [s, p](double lam, double phi) {
                const auto r = sphere::spherical_momentum_residual(s, p, lam, phi);
                const double m = std::max(std::abs(r.r.x1), std::abs(r.r.x2));
                return r.scale > 0.0 ? m / r.scale : 0.0;
            };
        };
        const std::vector<Case> cases{
            {"master-b-member", master_case(b_member)},
            {"master-mixed", master_case(mixed)},
            {"master-shaped-profile", master_case(shaped)},
            {"momentum-b-member", momentum_case(b_member, params_rest)},
            {"momentum-zonal", momentum_case(zonal, L.params)},
        };

        std::ofstream os(o.out);
        if (!os) throw std::runtime_error("cannot open " + o.out + " for writing");
        os << "case,n_points,max_residual,rms_residual\n";
        std::mt19937 rng(o.seed);
        std::uniform_real_distribution<double> lam_d(-3.1, 3.1);
        std::uniform_real_distribution<double> phi_d(-1.45, 1.45);
        double overall_max = 0.0;
        for (const auto& c : cases) {
            double worst = 0.0, sumsq = 0.0;
            for (int i = 0; i < o.points; ++i) {
                const double rel = c.rel_residual(lam_d(rng), phi_d(rng));
                worst = std::max(worst, rel);
                sumsq += rel * rel;
            }
            overall_max = std::max(overall_max, worst);
            os << c.name << ',' << o.points << ',';
            csv::write_field(os, worst, false);
            csv::write_field(os, std::sqrt(sumsq / o.points), true);
        }
        os.close();
        std::cout << "wrote " << o.out << "; worst relative residual = "
                  << csv::format(overall_max) << "\n";

        Sidecar sc = base_sidecar("sphere-check", L);
        sc.add("points", static_cast<long>(o.points));
        sc.add("seed", static_cast<long>(o.seed));
        sc.note("out", o.out);
        sc.write(o.out + ".meta");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

// ------------------------------------------------------------------- compare

struct CompareOpts {
    std::string preset = "sec45";
    std::string config;
    std::string out = "compare.csv";
    double horizon_days = -1.0;
};

int run_compare(const CompareOpts& o) {
    Loaded L;
    try {
        L = load_setup(o.preset, o.config, "");
        if (L.preset.config.coriolis == model::CoriolisKind::sphere)
            throw std::invalid_argument("compare contrasts the two plane models");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        const double days = o.horizon_days >= 0.0 ? o.horizon_days : L.preset.horizon_days;
        const double horizon = days * 86400.0;
        auto prob_l = make_problem(L, horizon);
        prob_l.coriolis = model::LPlane{L.params.l0};
        auto prob_b = prob_l;
        prob_b.coriolis = model::BetaPlane{L.params.l0, L.params.beta};

        trajectory::IntegrateOptions iopts;
        if (horizon > 0.0)
            for (double t = 0.0; t <= horizon; t += 60.0) iopts.sample_times.push_back(t);
        const auto res_l = trajectory::integrate(prob_l, iopts);
        const auto res_b = trajectory::integrate(prob_b, iopts);
        if (res_l.reason != trajectory::StopReason::completed ||
            res_b.reason != trajectory::StopReason::completed) {
            std::cerr << "integrator stopped early ("
                      << reason_name(res_l.reason != trajectory::StopReason::completed
                                         ? res_l.reason
                                         : res_b.reason)
                      << ")\n";
            return kExitNumeric;
        }

        std::ofstream os(o.out);
        if (!os) throw std::runtime_error("cannot open " + o.out + " for writing");
        os << "t,x1_l,x2_l,x1_beta,x2_beta,deviation\n";
        const std::size_t n = std::min(res_l.states.size(), res_b.states.size());
        double path = 0.0, path_2d = 0.0, dev_2d = 0.0, dev_all = 0.0;
        Vec2 prev = res_l.states.empty() ? Vec2{} : res_l.states.front().X;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = res_l.states[i];
            const auto& b = res_b.states[i];
            const double dev = norm(a.X - b.X);
            path += norm(a.X - prev);
            prev = a.X;
            if (a.t <= 2.0 * 86400.0) {
                path_2d = path;
                dev_2d = std::max(dev_2d, dev);
            }
            dev_all = std::max(dev_all, dev);
            csv::write_field(os, a.t, false);
            csv::write_field(os, a.X.x1, false);
            csv::write_field(os, a.X.x2, false);
            csv::write_field(os, b.X.x1, false);
            csv::write_field(os, b.X.x2, false);
            csv::write_field(os, dev, true);
        }
        os.close();

        std::cout << "path length: " << csv::format(path_2d / 1e3) << " km at 2 days, "
                  << csv::format(path / 1e3) << " km total\n";
        if (path_2d > 0.0)
            std::cout << "max |X_l - X_beta| up to 2 days = " << csv::format(dev_2d / 1e3)
                      << " km (" << csv::format(100.0 * dev_2d / path_2d)
                      << "% of the 2-day path)\n";
        if (path > 0.0)
            std::cout << "max |X_l - X_beta| overall = " << csv::format(dev_all / 1e3)
                      << " km (" << csv::format(100.0 * dev_all / path)
                      << "% of the full path)\n";

        Sidecar sc = base_sidecar("compare", L);
        sc.add("horizon_days", days);
        sc.note("out", o.out);
        sc.note("max_deviation_2d_m", dev_2d);
        sc.note("max_deviation_m", dev_all);
        sc.note("path_length_m", path);
        sc.write(o.out + ".meta");
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexctl: frozen-vortex experiments on the plane and the sphere"};
    app.require_subcommand(1);

    TrajectoryOpts topts;
    auto* t = app.add_subcommand("trajectory", "integrate a vortex-center trajectory");
    t->add_option("--preset", topts.preset, "experiment preset")
        ->check(CLI::IsMember(vortexctl::preset_names()));
    t->add_option("--config", topts.config, "model config file (key = value)");
    t->add_option("--model", topts.model, "Coriolis model override")
        ->check(CLI::IsMember({"l", "beta", "sphere"}));
    t->add_flag("--closed-form", topts.closed_form,
                "also write the analytic l-plane path and the max deviation");
    t->add_option("--horizon-days", topts.horizon_days, "override the preset horizon");
    t->add_option("--out", topts.out, "output CSV path");

    SimulateOpts sopts;
    auto* s = app.add_subcommand("simulate", "run a finite-difference vortex experiment");
    s->add_option("--preset", sopts.preset, "experiment preset")
        ->required()
        ->check(CLI::IsMember(vortexctl::preset_names()));
    s->add_option("--config", sopts.config, "model config file (key = value)");
    s->add_option("--steps", sopts.steps, "override the preset step count");
    s->add_option("--snapshot-every", sopts.snapshot_every, "override the snapshot stride");
    s->add_option("--out", sopts.out, "output directory");

    DiscrepancyOpts dopts;
    auto* d = app.add_subcommand("discrepancy",
                                 "delta-neighborhood radii of Q along a trajectory");
    d->add_option("--preset", dopts.preset, "experiment preset")
        ->check(CLI::IsMember(vortexctl::preset_names()));
    d->add_option("--config", dopts.config, "model config file (key = value)");
    d->add_option("--model", dopts.model, "Coriolis model override")
        ->check(CLI::IsMember({"l", "beta", "sphere"}));
    d->add_option("--delta", dopts.delta, "discrepancy threshold (m/s^2)")->required();
    d->add_option("--search-radius", dopts.search_radius, "ball radius around the center, m");
    d->add_option("--grid-n", dopts.grid_n, "polar sampling resolution");
    d->add_option("--horizon-days", dopts.horizon_days, "override the preset horizon");
    d->add_option("--out", dopts.out, "output CSV path");

    SphereCheckOpts shopts;
    auto* sh = app.add_subcommand("sphere-check",
                                  "residuals of the spherical exact solutions");
    sh->add_option("--config", shopts.config, "model config file (key = value)");
    sh->add_option("--points", shopts.points, "random chart points per case");
    sh->add_option("--seed", shopts.seed, "RNG seed");
    sh->add_option("--out", shopts.out, "output CSV path");

    CompareOpts copts;
    auto* c = app.add_subcommand("compare", "l-plane vs beta-plane trajectory table");
    c->add_option("--preset", copts.preset, "experiment preset")
        ->check(CLI::IsMember(vortexctl::preset_names()));
    c->add_option("--config", copts.config, "model config file (key = value)");
    c->add_option("--horizon-days", copts.horizon_days, "override the preset horizon");
    c->add_option("--out", copts.out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (t->parsed()) return run_trajectory(topts);
    if (s->parsed()) return run_simulate(sopts);
    if (d->parsed()) return run_discrepancy(dopts);
    if (sh->parsed()) return run_sphere_check(shopts);
    if (c->parsed()) return run_compare(copts);
    return kExitConfig;
}
