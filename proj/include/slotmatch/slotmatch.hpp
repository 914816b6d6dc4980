#pragma once

#include "slotmatch/baselines.hpp"
#include "slotmatch/bench.hpp"
#include "slotmatch/core.hpp"
#include "slotmatch/csv.hpp"
#include "slotmatch/geo.hpp"
#include "slotmatch/graph.hpp"
#include "slotmatch/influence.hpp"
#include "slotmatch/inventory.hpp"
#include "slotmatch/ombm.hpp"
#include "slotmatch/selection.hpp"
#include "slotmatch/synthetic.hpp"
#include "slotmatch/verify.hpp"
