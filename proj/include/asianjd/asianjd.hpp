#pragma once

// Umbrella header.

#include "benchmarks.hpp"
#include "config.hpp"
#include "contract.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "iteration.hpp"
#include "jump_integral.hpp"
#include "jump_models.hpp"
#include "montecarlo.hpp"
#include "pde_engine.hpp"
#include "pricing.hpp"
#include "report.hpp"
