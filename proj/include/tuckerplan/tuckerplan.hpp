//
// tuckerplan : umbrella header
//

#pragma once

#include "tuckerplan/bench.hpp"
#include "tuckerplan/checked.hpp"
#include "tuckerplan/dense_tensor.hpp"
#include "tuckerplan/errors.hpp"
#include "tuckerplan/grid.hpp"
#include "tuckerplan/grid_dynamic.hpp"
#include "tuckerplan/grid_volume.hpp"
#include "tuckerplan/hooi.hpp"
#include "tuckerplan/mode_set.hpp"
#include "tuckerplan/problem.hpp"
#include "tuckerplan/serialize.hpp"
#include "tuckerplan/simulate.hpp"
#include "tuckerplan/tolerances.hpp"
#include "tuckerplan/tree_builders.hpp"
#include "tuckerplan/tree_cost.hpp"
#include "tuckerplan/tree_opt.hpp"
#include "tuckerplan/ttm.hpp"
#include "tuckerplan/ttm_tree.hpp"
