#include "vortex/model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace vortex::model {

namespace {

void check_primitives(double omega, double earth_radius, double phi0, double gamma3d) {
    if (omega < 0.0) throw std::invalid_argument("omega must be >= 0");
    if (earth_radius <= 0.0) throw std::invalid_argument("earth_radius must be > 0");
    if (!(std::abs(phi0) < std::numbers::pi / 2))
        throw std::invalid_argument("phi0 must satisfy |phi0| < pi/2");
    if (gamma3d <= 1.0) throw std::invalid_argument("gamma3d must be > 1");
}

PhysicalParams assemble(double omega, double earth_radius, double phi0, double gamma3d) {
    PhysicalParams p{};
    p.omega = omega;
    p.earth_radius = earth_radius;
    p.phi0 = phi0;
    p.l0 = 2.0 * omega * std::sin(phi0);
    p.beta = 2.0 * omega * std::cos(phi0) / earth_radius;
    p.gamma3d = gamma3d;
    p.gamma = (2.0 * gamma3d - 1.0) / gamma3d;
    return p;
}

}  // namespace

PhysicalParams derive_params(double omega, double earth_radius, double phi0,
                             double gamma3d, double state_const) {
    check_primitives(omega, earth_radius, phi0, gamma3d);
    if (state_const <= 0.0) throw std::invalid_argument("state_const must be > 0");
    PhysicalParams p = assemble(omega, earth_radius, phi0, gamma3d);
    p.state_const = state_const;
    p.c0 = p.gamma / (p.gamma - 1.0) * std::pow(state_const, 1.0 / p.gamma);
    return p;
}

PhysicalParams derive_params_c0(double omega, double earth_radius, double phi0,
                                double gamma3d, double c0) {
    check_primitives(omega, earth_radius, phi0, gamma3d);
    if (c0 <= 0.0) throw std::invalid_argument("c0 must be > 0");
    PhysicalParams p = assemble(omega, earth_radius, phi0, gamma3d);
    p.c0 = c0;
    p.state_const = std::pow((p.gamma - 1.0) / p.gamma * c0, p.gamma);
    p.c0_overridden = true;
    return p;
}

double coriolis_at(const CoriolisModel& m, Vec2 position) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LPlane>) {
                return v.l0;
            } else if constexpr (std::is_same_v<T, BetaPlane>) {
                return v.l0 + v.beta * position.x2;
            } else {
                const double lat = position.x2;
                if (!(std::abs(lat) < std::numbers::pi / 2))
                    throw std::domain_error(
                        "sphere Coriolis model requires |latitude| < pi/2");
                return 2.0 * v.omega * std::sin(lat);
            }
        },
        m);
}

double sea_level_state_const(double gamma) {
    return 101325.0 / std::pow(1.225, gamma);
}

ModelConfig parse_config(std::istream& in) {
    ModelConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        // Skip blank lines; anything else must be key = value.
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto num = [&] {
            std::size_t used = 0;
            double x = 0.0;
            try {
                x = std::stod(value, &used);
            } catch (const std::exception&) {
                used = std::string::npos;
            }
            if (used != value.size())
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": key '" + key + "': malformed number '" +
                                            value + "'");
            return x;
        };
        if (key == "omega") {
            cfg.omega = num();
        } else if (key == "radius") {
            cfg.radius = num();
        } else if (key == "phi0_deg") {
            cfg.phi0_deg = num();
        } else if (key == "gamma3d") {
            cfg.gamma3d = num();
        } else if (key == "c0") {
            cfg.c0 = num();
        } else if (key == "coriolis") {
            if (value == "l") cfg.coriolis = CoriolisKind::l;
            else if (value == "beta") cfg.coriolis = CoriolisKind::beta;
            else if (value == "sphere") cfg.coriolis = CoriolisKind::sphere;
            else
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": key 'coriolis': expected l|beta|sphere, got '" +
                                            value + "'");
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown config key '" + key + "'");
        }
    }
    return cfg;
}

ModelConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

PhysicalParams params_from(const ModelConfig& cfg) {
    const double phi0 = cfg.phi0_deg * std::numbers::pi / 180.0;
    if (cfg.c0) return derive_params_c0(cfg.omega, cfg.radius, phi0, cfg.gamma3d, *cfg.c0);
    const double gamma = (2.0 * cfg.gamma3d - 1.0) / cfg.gamma3d;
    return derive_params(cfg.omega, cfg.radius, phi0, cfg.gamma3d,
                         sea_level_state_const(gamma));
}

CoriolisModel coriolis_from(const ModelConfig& cfg, const PhysicalParams& p) {
    switch (cfg.coriolis) {
        case CoriolisKind::l: return LPlane{p.l0};
        case CoriolisKind::beta: return BetaPlane{p.l0, p.beta};
        case CoriolisKind::sphere: return Sphere{p.omega};
    }
    throw std::logic_error("unreachable");
}

}  // namespace vortex::model
