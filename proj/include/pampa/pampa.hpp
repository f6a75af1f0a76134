#pragma once

// Umbrella header for the solver; the experiment layer lives in pampa/bench/.

#include "pampa/state.hpp"
#include "pampa/dry.hpp"
#include "pampa/models.hpp"
#include "pampa/grid.hpp"
#include "pampa/reconstruction.hpp"
#include "pampa/global_flux.hpp"
#include "pampa/low_order.hpp"
#include "pampa/high_order.hpp"
#include "pampa/limiting.hpp"
#include "pampa/spatial_operator.hpp"
#include "pampa/time_integration.hpp"
#include "pampa/equilibria.hpp"
