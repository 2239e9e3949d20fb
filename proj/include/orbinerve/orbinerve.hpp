#pragma once

#include "orbinerve/catalog.hpp"
#include "orbinerve/chen_ruan.hpp"
#include "orbinerve/configuration.hpp"
#include "orbinerve/groupoid.hpp"
#include "orbinerve/homology.hpp"
#include "orbinerve/level_set.hpp"
#include "orbinerve/nerves.hpp"
#include "orbinerve/numbers.hpp"
#include "orbinerve/smith.hpp"
#include "orbinerve/sparse_matrix.hpp"
#include "orbinerve/workbench/input.hpp"
#include "orbinerve/workbench/run.hpp"
