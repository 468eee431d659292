#pragma once

#include "ucds/common.hpp"
#include "ucds/ds/arithmetic.hpp"
#include "ucds/ds/encode.hpp"
#include "ucds/ds/io.hpp"
#include "ucds/ds/structure.hpp"
#include "ucds/eaa/noise.hpp"
#include "ucds/eaa/quadratic_form.hpp"
#include "ucds/eaa/to_ds.hpp"
#include "ucds/grid/loss_model.hpp"
#include "ucds/grid/network.hpp"
#include "ucds/grid/ptdf.hpp"
#include "ucds/gwo/leaders.hpp"
#include "ucds/gwo/parallel.hpp"
#include "ucds/gwo/priority.hpp"
#include "ucds/gwo/repair.hpp"
#include "ucds/gwo/rng.hpp"
#include "ucds/gwo/solver.hpp"
#include "ucds/gwo/update.hpp"
#include "ucds/uc/constraints.hpp"
#include "ucds/uc/costs.hpp"
#include "ucds/uc/problem.hpp"
#include "ucds/uc/scenario.hpp"
#include "ucds/uc/schedule.hpp"
#include "ucds/uc/unit.hpp"
