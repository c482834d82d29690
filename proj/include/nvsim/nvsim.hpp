#pragma once

#include "nvsim/config.hpp"
#include "nvsim/distributions.hpp"
#include "nvsim/engine.hpp"
#include "nvsim/experiments.hpp"
#include "nvsim/periodic_demand.hpp"
#include "nvsim/policy.hpp"
#include "nvsim/random.hpp"
#include "nvsim/report.hpp"
#include "nvsim/stats.hpp"
