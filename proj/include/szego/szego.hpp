#pragma once

// Umbrella header: q-series primitives, annulus Szego kernel evaluators,
// the Nystrom reference solver for the boundary integral equation and the convergence experiment.

#include "szego/error.hpp"
#include "szego/qseries.hpp"
#include "szego/kernel.hpp"
#include "szego/nystrom.hpp"
#include "szego/bench.hpp"
