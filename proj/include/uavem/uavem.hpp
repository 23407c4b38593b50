#pragma once

// Quadrotor mission energy simulator: maneuver scheduling, powertrain
// and battery models, laser-charging link, mission orchestration.

#include "uavem/battery.hpp"
#include "uavem/config.hpp"
#include "uavem/energy.hpp"
#include "uavem/errors.hpp"
#include "uavem/geometry.hpp"
#include "uavem/integrate.hpp"
#include "uavem/maneuver.hpp"
#include "uavem/mission.hpp"
#include "uavem/powertrain.hpp"
#include "uavem/report_io.hpp"
#include "uavem/sweep.hpp"
#include "uavem/wpt.hpp"
