// boundent.hpp — Umbrella include

#pragma once

#include "boundent/model.hpp"
#include "boundent/spectral.hpp"
#include "boundent/states.hpp"
#include "boundent/dopri5.hpp"
#include "boundent/dynamics.hpp"
#include "boundent/equilibrium.hpp"
#include "boundent/sweep.hpp"
#include "boundent/figures.hpp"
#include "boundent/evolve_config.hpp"
