#include "vortex/grid_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "vortex/csv.hpp"

namespace vortex::grid {

namespace {

double coriolis_value(const model::CoriolisModel& m, double y) {
    if (const auto* lp = std::get_if<model::LPlane>(&m)) return lp->l0;
    if (const auto* bp = std::get_if<model::BetaPlane>(&m)) return bp->l0 + bp->beta * y;
    throw std::invalid_argument(
        "grid solver supports l-plane and beta-plane Coriolis only");
}

double flux_coefficient_of(const SolverConfig& c) {
    return c.flux_coefficient != 0.0 ? c.flux_coefficient : 9.0 * c.params.c0 / 16.0;
}

void validate(const SolverConfig& c) {
    if (!(c.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(c.cfl_cap > 0.0 && c.cfl_cap <= 1.0))
        throw std::invalid_argument("cfl_cap must lie in (0, 1]");
    if (!(c.flux_exponent > 1.0))
        throw std::invalid_argument("flux_exponent must exceed 1");
    if (!(flux_coefficient_of(c) > 0.0))
        throw std::invalid_argument("flux_coefficient must be positive");
    if (c.steps < 0) throw std::invalid_argument("steps must be nonnegative");
    coriolis_value(c.coriolis, 0.0);
}

// pi(rho) solving c0 dpi/drho == (1/rho) dP/drho for P = CF rho^kappa.
double pi_coefficient(const SolverConfig& c) {
    const double kappa = c.flux_exponent;
    return flux_coefficient_of(c) * kappa / (c.params.c0 * (kappa - 1.0));
}

}  // namespace

SolverConfig make_config(const model::PhysicalParams& params,
                         const model::CoriolisModel& coriolis, double dt, long steps) {
    SolverConfig c;
    c.params = params;
    c.coriolis = coriolis;
    c.dt = dt;
    c.steps = steps;
    c.flux_coefficient = 9.0 * params.c0 / 16.0;
    validate(c);
    return c;
}

double pi_from_rho(const SolverConfig& config, double rho) {
    return pi_coefficient(config) * std::pow(rho, config.flux_exponent - 1.0);
}

double rho_from_pi(const SolverConfig& config, double pi) {
    return std::pow(pi / pi_coefficient(config), 1.0 / (config.flux_exponent - 1.0));
}

double sound_speed(const SolverConfig& config, double rho) {
    return std::sqrt(flux_coefficient_of(config) * config.flux_exponent *
                     std::pow(rho, config.flux_exponent - 1.0));
}

GridState initialize_vortex(const GridGeometry& geom, const potential::VortexSpec& vortex,
                            const potential::BearingField& bearing, Vec2 ambient,
                            const SolverConfig& config, Vec2 center_offset) {
    validate(config);
    if (geom.nx < 1 || geom.ny < 1 || !(geom.dx > 0.0) || !(geom.dy > 0.0))
        throw std::invalid_argument("grid geometry must have positive extents");

    GridState s;
    s.nx = geom.nx;
    s.ny = geom.ny;
    s.dx = geom.dx;
    s.dy = geom.dy;
    const std::size_t cells = static_cast<std::size_t>(geom.nx) * geom.ny;
    s.rho.resize(cells);
    s.mx.resize(cells);
    s.my.resize(cells);

    const Vec2 center{geom.nx * geom.dx / 2.0 + center_offset.x1,
                      geom.ny * geom.dy / 2.0 + center_offset.x2};
    const double b0 = vortex.b0();

    double min_pi = std::numeric_limits<double>::infinity();
    int min_i = 0, min_j = 0;
    for (int i = 0; i < s.nx; ++i) {
        for (int j = 0; j < s.ny; ++j) {
            const Vec2 x{s.x_center(i) - center.x1, s.y_center(j) - center.x2};
            const Vec2 u = ambient + potential::velocity(vortex, x);
            const double pi = config.pi_ambient +
                              potential::steady_pressure(vortex, config.params, x) +
                              potential::bearing_at(bearing, 0.0, x, b0);
            if (pi < min_pi) {
                min_pi = pi;
                min_i = i;
                min_j = j;
            }
            const double rho = pi > 0.0 ? rho_from_pi(config, pi) : -1.0;
            const std::size_t k = s.idx(i, j);
            s.rho[k] = rho;
            s.mx[k] = rho * u.x1;
            s.my[k] = rho * u.x2;
        }
    }
    if (!(min_pi > 0.0))
        throw std::invalid_argument("initial density not positive: min pi = " +
                                    std::to_string(min_pi) + " at cell (" +
                                    std::to_string(min_i) + ", " + std::to_string(min_j) +
                                    ")");

    if (const auto* g = std::get_if<potential::Gaussian>(&vortex.family)) {
        double worst = 0.0;
        for (int i = 0; i < s.nx; ++i) {
            for (int j = 0; j < s.ny; ++j) {
                if (i != 0 && i != s.nx - 1 && j != 0 && j != s.ny - 1) continue;
                const double rx = s.x_center(i) - center.x1;
                const double ry = s.y_center(j) - center.x2;
                worst = std::max(
                    worst, std::exp(-g->sigma * (rx * rx + ry * ry) / 2.0));
            }
        }
        if (worst >= 1e-6)
            std::cerr << "initialize_vortex: Gaussian envelope reaches " << worst
                      << " at the boundary; the domain may be too small\n";
    }
    return s;
}

namespace {

struct Padded {
    int nx, ny;  // interior extents; arrays are (nx+2) x (ny+2)
    std::vector<double> rho, mx, my;
    std::size_t at(int pi, int pj) const {
        return static_cast<std::size_t>(pi) * (ny + 2) + pj;
    }
};

int wrap_index(int i, int n) { return ((i % n) + n) % n; }

Padded pad_state(const GridState& s, Boundary bc) {
    Padded p;
    p.nx = s.nx;
    p.ny = s.ny;
    const std::size_t total = static_cast<std::size_t>(s.nx + 2) * (s.ny + 2);
    p.rho.resize(total);
    p.mx.resize(total);
    p.my.resize(total);
    for (int pi = 0; pi <= s.nx + 1; ++pi) {
        const int si = bc == Boundary::periodic ? wrap_index(pi - 1, s.nx)
                                                : std::clamp(pi - 1, 0, s.nx - 1);
        for (int pj = 0; pj <= s.ny + 1; ++pj) {
            const int sj = bc == Boundary::periodic ? wrap_index(pj - 1, s.ny)
                                                    : std::clamp(pj - 1, 0, s.ny - 1);
            const std::size_t k = p.at(pi, pj);
            const std::size_t q = s.idx(si, sj);
            p.rho[k] = s.rho[q];
            p.mx[k] = s.mx[q];
            p.my[k] = s.my[q];
        }
    }
    return p;
}

struct Fields3 {
    std::vector<double> f0, f1, f2;
    void resize(std::size_t n) {
        f0.resize(n);
        f1.resize(n);
        f2.resize(n);
    }
};

// F and G carry their signs: U_t = F_x1 + G_x2 + S.
void fluxes_and_source(const std::vector<double>& rho, const std::vector<double>& mx,
                       const std::vector<double>& my, const SolverConfig& config,
                       const std::function<double(std::size_t)>& y_of, Fields3& F,
                       Fields3& G, Fields3& S) {
    const double CF = flux_coefficient_of(config);
    const double kappa = config.flux_exponent;
    const std::size_t n = rho.size();
    F.resize(n);
    G.resize(n);
    S.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = rho[k], a = mx[k], b = my[k];
        const double p = CF * std::pow(r, kappa);
        F.f0[k] = -a;
        F.f1[k] = -a * a / r - p;
        F.f2[k] = -a * b / r;
        G.f0[k] = -b;
        G.f1[k] = F.f2[k];
        G.f2[k] = -b * b / r - p;
        const double l = coriolis_value(config.coriolis, y_of(k));
        if (config.momentum_form_source) {
            S.f0[k] = 0.0;
            S.f1[k] = l * b;
            S.f2[k] = -l * a;
        } else {
            S.f0[k] = 0.0;
            S.f1[k] = l * b / r;
            S.f2[k] = -l * a / r;
        }
    }
}

void apply_dissipation(GridState& s, const SolverConfig& config) {
    const int nx = s.nx, ny = s.ny;
    const double eps = config.eps4;
    auto src_i = [&](int i) {
        return config.boundary == Boundary::periodic ? wrap_index(i, nx)
                                                     : std::clamp(i, 0, nx - 1);
    };
    auto src_j = [&](int j) {
        return config.boundary == Boundary::periodic ? wrap_index(j, ny)
                                                     : std::clamp(j, 0, ny - 1);
    };
    for (std::vector<double>* field : {&s.rho, &s.mx, &s.my}) {
        std::vector<double> out(field->size());
        auto v = [&](int i, int j) { return (*field)[s.idx(src_i(i), src_j(j))]; };
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const double center = v(i, j);
                const double d4x = v(i - 2, j) - 4.0 * v(i - 1, j) + 6.0 * center -
                                   4.0 * v(i + 1, j) + v(i + 2, j);
                const double d4y = v(i, j - 2) - 4.0 * v(i, j - 1) + 6.0 * center -
                                   4.0 * v(i, j + 1) + v(i, j + 2);
                out[s.idx(i, j)] = center - eps * (d4x + d4y);
            }
        }
        *field = std::move(out);
    }
}

}  // namespace

GridState step(const GridState& state, const SolverConfig& config) {
    validate(config);
    const int nx = state.nx, ny = state.ny;
    if (nx < 1 || ny < 1) throw std::invalid_argument("cannot step an empty grid");
    const double dx = state.dx, dy = state.dy, dt = config.dt;

    double max_speed = 0.0;
    double min_rho = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < state.rho.size(); ++k) {
        const double r = state.rho[k];
        min_rho = std::min(min_rho, r);
        if (r > 0.0) {
            const double spd = std::hypot(state.mx[k] / r, state.my[k] / r) +
                               sound_speed(config, r);
            max_speed = std::max(max_speed, spd);
        }
    }
    if (!(min_rho > 0.0))
        throw std::runtime_error("nonpositive density entering step: min rho = " +
                                 std::to_string(min_rho));
    const double cfl = max_speed * dt / std::min(dx, dy);
    if (cfl > config.cfl_cap)
        throw std::runtime_error("CFL number " + std::to_string(cfl) + " exceeds cap " +
                                 std::to_string(config.cfl_cap));

    const Padded P = pad_state(state, config.boundary);
    Fields3 F, G, S;
    fluxes_and_source(
        P.rho, P.mx, P.my, config,
        [&](std::size_t k) {
            const int pj = static_cast<int>(k % (ny + 2));
            return (pj - 0.5) * dy;
        },
        F, G, S);

    // Half step: corner values at ((ci) dx, (cj) dy), extents (nx+1) x (ny+1).
    const int cnx = nx + 1, cny = ny + 1;
    Fields3 C;
    C.resize(static_cast<std::size_t>(cnx) * cny);
    const bool with_extra = static_cast<bool>(config.extra_source);
    for (int ci = 0; ci < cnx; ++ci) {
        for (int cj = 0; cj < cny; ++cj) {
            const std::size_t a = P.at(ci, cj), b = P.at(ci + 1, cj);
            const std::size_t c = P.at(ci, cj + 1), d = P.at(ci + 1, cj + 1);
            std::array<double, 3> extra{};
            if (with_extra) extra = config.extra_source(state.time, ci * dx, cj * dy);
            auto corner = [&](const std::vector<double>& u, const std::vector<double>& f,
                              const std::vector<double>& g, const std::vector<double>& sr,
                              double es) {
                const double ubar = 0.25 * (u[a] + u[b] + u[c] + u[d]);
                const double dxF = 0.5 / dx * ((f[d] - f[c]) + (f[b] - f[a]));
                const double dyG = 0.5 / dy * ((g[d] - g[b]) + (g[c] - g[a]));
                const double sbar = 0.25 * (sr[a] + sr[b] + sr[c] + sr[d]);
                return ubar + 0.5 * dt * (dxF + dyG + sbar + es);
            };
            const std::size_t k = static_cast<std::size_t>(ci) * cny + cj;
            C.f0[k] = corner(P.rho, F.f0, G.f0, S.f0, extra[0]);
            C.f1[k] = corner(P.mx, F.f1, G.f1, S.f1, extra[1]);
            C.f2[k] = corner(P.my, F.f2, G.f2, S.f2, extra[2]);
            if (!(C.f0[k] > 0.0))
                throw std::runtime_error("nonpositive density at half step, corner (" +
                                         std::to_string(ci) + ", " + std::to_string(cj) +
                                         ")");
        }
    }

    Fields3 Fc, Gc, Sc;
    fluxes_and_source(
        C.f0, C.f1, C.f2, config,
        [&](std::size_t k) {
            const int cj = static_cast<int>(k % cny);
            return cj * dy;
        },
        Fc, Gc, Sc);

    GridState out;
    out.nx = nx;
    out.ny = ny;
    out.dx = dx;
    out.dy = dy;
    out.time = state.time + dt;
    out.rho.resize(state.rho.size());
    out.mx.resize(state.mx.size());
    out.my.resize(state.my.size());
    const double th = state.time + 0.5 * dt;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t a = static_cast<std::size_t>(i) * cny + j;
            const std::size_t b = static_cast<std::size_t>(i + 1) * cny + j;
            const std::size_t c = static_cast<std::size_t>(i) * cny + j + 1;
            const std::size_t d = static_cast<std::size_t>(i + 1) * cny + j + 1;
            std::array<double, 3> extra{};
            if (with_extra)
                extra = config.extra_source(th, state.x_center(i), state.y_center(j));
            auto update = [&](double u0, const std::vector<double>& f,
                              const std::vector<double>& g, const std::vector<double>& sr,
                              double es) {
                const double dxF = 0.5 / dx * ((f[d] - f[c]) + (f[b] - f[a]));
                const double dyG = 0.5 / dy * ((g[d] - g[b]) + (g[c] - g[a]));
                const double sbar = 0.25 * (sr[a] + sr[b] + sr[c] + sr[d]);
                return u0 + dt * (dxF + dyG + sbar + es);
            };
            const std::size_t k = state.idx(i, j);
            out.rho[k] = update(state.rho[k], Fc.f0, Gc.f0, Sc.f0, extra[0]);
            out.mx[k] = update(state.mx[k], Fc.f1, Gc.f1, Sc.f1, extra[1]);
            out.my[k] = update(state.my[k], Fc.f2, Gc.f2, Sc.f2, extra[2]);
        }
    }

    if (config.eps4 != 0.0) apply_dissipation(out, config);

    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            if (!(out.rho[out.idx(i, j)] > 0.0))
                throw std::runtime_error("nonpositive density after step at cell (" +
                                         std::to_string(i) + ", " + std::to_string(j) +
                                         ")");
    return out;
}

namespace {

double total_mass(const GridState& s) {
    double sum = 0.0;
    for (double r : s.rho) sum += r;
    return sum * s.dx * s.dy;
}

}  // namespace

RunRecord run(const GridState& initial, const SolverConfig& config, long snapshot_every) {
    validate(config);
    RunRecord rec;
    rec.config = config;
    GridState state = initial;
    auto record = [&](long k) {
        rec.snapshots.push_back(
            {k, state.time, state, track_center(state), total_mass(state)});
    };
    record(0);
    for (long k = 1; k <= config.steps; ++k) {
        try {
            state = step(state, config);
        } catch (const std::exception& e) {
            throw std::runtime_error("step " + std::to_string(k) + ": " + e.what());
        }
        if (k == config.steps || (snapshot_every > 0 && k % snapshot_every == 0))
            record(k);
    }
    return rec;
}

namespace {

struct QuadFit {
    double value, di, dj;
};

// Least-squares quadratic over the 3x3 stencil around the peak; the normal
// equations for the basis (1, di, dj, di^2, dj^2, di dj) decouple into scalar
// rows plus one fixed 3x3 block, inverted in closed form here.
QuadFit biquadratic_peak(const std::vector<double>& w, int ny, int pi, int pj) {
    auto at = [&](int i, int j) { return w[static_cast<std::size_t>(i) * ny + j]; };
    double S0 = 0, S1 = 0, S2 = 0, S3 = 0, S4 = 0, S5 = 0;
    for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
            const double v = at(pi + di, pj + dj);
            S0 += v;
            S1 += di * v;
            S2 += dj * v;
            S3 += di * di * v;
            S4 += dj * dj * v;
            S5 += di * dj * v;
        }
    }
    const double a = (20.0 * S0 - 12.0 * S3 - 12.0 * S4) / 36.0;
    const double b = S1 / 6.0, c = S2 / 6.0;
    const double d = (-12.0 * S0 + 18.0 * S3) / 36.0;
    const double e = (-12.0 * S0 + 18.0 * S4) / 36.0;
    const double f = S5 / 4.0;
    const double det = 4.0 * d * e - f * f;
    if (det <= 0.0) return {at(pi, pj), 0.0, 0.0};
    const double di = (-2.0 * e * b + f * c) / det;
    const double dj = (-2.0 * d * c + f * b) / det;
    if (std::abs(di) > 1.0 || std::abs(dj) > 1.0) return {at(pi, pj), 0.0, 0.0};
    return {a + b * di + c * dj + d * di * di + e * dj * dj + f * di * dj, di, dj};
}

}  // namespace

std::optional<Vec2> track_center(const GridState& state) {
    const int nx = state.nx, ny = state.ny;
    constexpr int margin = 2;
    if (nx < 2 * margin + 1 || ny < 2 * margin + 1) return std::nullopt;

    std::vector<double> curl(state.rho.size(), 0.0);
    auto u1 = [&](int i, int j) {
        const std::size_t k = state.idx(i, j);
        return state.mx[k] / state.rho[k];
    };
    auto u2 = [&](int i, int j) {
        const std::size_t k = state.idx(i, j);
        return state.my[k] / state.rho[k];
    };
    for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
            curl[state.idx(i, j)] = (u2(i + 1, j) - u2(i - 1, j)) / (2.0 * state.dx) -
                                    (u1(i, j + 1) - u1(i, j - 1)) / (2.0 * state.dy);

    int pi = margin, pj = margin;
    double peak = -1.0;
    for (int i = margin; i < nx - margin; ++i) {
        for (int j = margin; j < ny - margin; ++j) {
            const double v = std::abs(curl[state.idx(i, j)]);
            if (v > peak) {
                peak = v;
                pi = i;
                pj = j;
            }
        }
    }
    const double sign = curl[state.idx(pi, pj)] >= 0.0 ? 1.0 : -1.0;
    std::vector<double> w(curl.size());
    for (std::size_t k = 0; k < curl.size(); ++k) w[k] = sign * curl[k];
    if (w[state.idx(pi, pj)] < 1e-8) return std::nullopt;

    const QuadFit fit = biquadratic_peak(w, ny, pi, pj);
    const double thr = 0.5 * fit.value;

    std::vector<char> mask(w.size(), 0);
    std::vector<std::pair<int, int>> stack{{pi, pj}};
    mask[state.idx(pi, pj)] = 1;
    while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (const auto& [ii, jj] : nb) {
            if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
            const std::size_t k = state.idx(ii, jj);
            if (!mask[k] && w[k] >= thr) {
                mask[k] = 1;
                stack.emplace_back(ii, jj);
            }
        }
    }

    double tot = 0.0, sx = 0.0, sy = 0.0;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t k = state.idx(i, j);
            if (!mask[k]) continue;
            const double wt = std::max(w[k] - thr, 0.0);
            tot += wt;
            sx += wt * state.x_center(i);
            sy += wt * state.y_center(j);
        }
    }
    if (!(tot > 0.0)) return Vec2{state.x_center(pi), state.y_center(pj)};
    return Vec2{sx / tot, sy / tot};
}

void snapshot_to_csv(const GridState& state, const SolverConfig& config,
                     const std::filesystem::path& path) {
    if (state.nx < 1 || state.ny < 1)
        throw std::invalid_argument("cannot write a snapshot of an empty grid");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << "i,j,x,y,rho,u1,u2,pi\n";
    for (int j = 0; j < state.ny; ++j) {
        for (int i = 0; i < state.nx; ++i) {
            const std::size_t k = state.idx(i, j);
            const double r = state.rho[k];
            os << i << ',' << j << ',';
            csv::write_field(os, state.x_center(i), false);
            csv::write_field(os, state.y_center(j), false);
            csv::write_field(os, r, false);
            csv::write_field(os, state.mx[k] / r, false);
            csv::write_field(os, state.my[k] / r, false);
            csv::write_field(os, pi_from_rho(config, r), true);
        }
    }
    if (!os.flush()) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace vortex::grid
