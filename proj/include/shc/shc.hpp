#pragma once

// Umbrella header: the whole library in one include.

#include "shc/config.hpp"
#include "shc/errors.hpp"
#include "shc/growth.hpp"
#include "shc/matrix.hpp"
#include "shc/model.hpp"
#include "shc/numeric.hpp"
#include "shc/oracle.hpp"
#include "shc/perturb.hpp"
#include "shc/planner.hpp"
#include "shc/solver.hpp"
