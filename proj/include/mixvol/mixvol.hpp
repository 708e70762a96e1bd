#pragma once

// Umbrella header.

#include "body.hpp"
#include "config.hpp"
#include "geom.hpp"
#include "hull.hpp"
#include "mixed_volume.hpp"
#include "monte_carlo.hpp"
#include "random_geometry.hpp"
#include "rng.hpp"
#include "special_functions.hpp"
#include "verifier.hpp"
