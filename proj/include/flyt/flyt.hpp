#pragma once

#include "flyt/aviary.hpp"
#include "flyt/components/booster.hpp"
#include "flyt/components/gimbal.hpp"
#include "flyt/components/lifting_surface.hpp"
#include "flyt/components/motor.hpp"
#include "flyt/config.hpp"
#include "flyt/drones/fixedwing.hpp"
#include "flyt/drones/presets.hpp"
#include "flyt/drones/quadx.hpp"
#include "flyt/drones/rocket.hpp"
#include "flyt/envs/observation.hpp"
#include "flyt/envs/rewards.hpp"
#include "flyt/envs/tasks.hpp"
#include "flyt/envs/waypoints.hpp"
#include "flyt/errors.hpp"
#include "flyt/frames.hpp"
#include "flyt/pid.hpp"
#include "flyt/rigid_body.hpp"
#include "flyt/runner.hpp"
