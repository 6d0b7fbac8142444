#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vortex/model.hpp"
#include "vortex/potential.hpp"
#include "vortex/vec2.hpp"

namespace vortexctl {

// A named experiment: model knobs plus the vortex/bearing/grid parameters the
// paper's figures use.  "-desk" variants shrink the grid and horizon so the
// whole suite runs in minutes.
struct Preset {
    std::string name;
    vortex::model::ModelConfig config;

    double B0 = 3.5e3;
    double sigma = 1e-9;
    bool zero_bearing = false;
    double sigma0 = 1e-13;
    double M10 = 0.0, M20 = 0.0;

    vortex::Vec2 ambient{0.0, 0.0};  // grid ambient flow == theory V(0)
    vortex::Vec2 v0{0.0, 0.0};       // trajectory-command initial velocity
    double horizon_days = 7.0;

    int nx = 0, ny = 0;  // zero grid => trajectory-only preset
    double dx = 12.8e3, dy = 12.8e3, dt = 10.0;
    long steps = 0;
    long snapshot_every = 0;

    std::vector<std::pair<std::string, std::string>> notes;
};

Preset preset_by_name(const std::string& name);
const std::vector<std::string>& preset_names();

vortex::potential::VortexSpec preset_vortex(const Preset& p);
vortex::potential::BearingField preset_bearing(const Preset& p);

}  // namespace vortexctl
