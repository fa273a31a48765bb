#pragma once

#include "redld/detector_set.hpp"
#include "redld/error.hpp"
#include "redld/families.hpp"
#include "redld/graph.hpp"
#include "redld/grid.hpp"
#include "redld/rational.hpp"
#include "redld/sat_reduction.hpp"
#include "redld/solver.hpp"
#include "redld/trees.hpp"
#include "redld/verify.hpp"
