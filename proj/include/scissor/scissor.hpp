#pragma once

// Umbrella header: force and velocity-ratio analysis of n-stage scissor
// lifts for arbitrary linear-actuator placements, with an independent
// coordinate-geometry oracle and placement search.

#include "scissor/error.hpp"
#include "scissor/lift_model.hpp"
#include "scissor/force_engine.hpp"
#include "scissor/geometry_oracle.hpp"
#include "scissor/design_search.hpp"
#include "scissor/sampling.hpp"
#include "scissor/verify.hpp"
