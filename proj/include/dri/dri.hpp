#pragma once

#include "errors.hpp"
#include "format.hpp"
#include "gravity_model.hpp"
#include "kinematics.hpp"
#include "parallax.hpp"
#include "propagator.hpp"
#include "quasi_kepler.hpp"
#include "reference_integrator.hpp"
#include "truth_cache.hpp"
#include "types.hpp"
