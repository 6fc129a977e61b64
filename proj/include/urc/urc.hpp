#pragma once

#include "urc/coverage.hpp"
#include "urc/model.hpp"
#include "urc/optimize.hpp"
#include "urc/quadrature.hpp"
#include "urc/rate.hpp"
#include "urc/rng.hpp"
#include "urc/sim.hpp"
#include "urc/specfun.hpp"
#include "urc/sweep.hpp"
#include "urc/validate.hpp"
