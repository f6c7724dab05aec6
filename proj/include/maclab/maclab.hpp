#pragma once

#include "maclab/analytic.hpp"
#include "maclab/core.hpp"
#include "maclab/equilibrium.hpp"
#include "maclab/error.hpp"
#include "maclab/grid.hpp"
#include "maclab/io.hpp"
#include "maclab/lattice.hpp"
#include "maclab/oracle.hpp"
#include "maclab/reference.hpp"
#include "maclab/scenarios.hpp"
#include "maclab/snapshot.hpp"
#include "maclab/version.hpp"
