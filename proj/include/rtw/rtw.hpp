#pragma once

// Everything: graphs and contractors, decompositions, PMCs, the HPID engine,
// the contraction bridge, safe separators, the solver and PACE I/O.

#include "rtw/bridge.hpp"
#include "rtw/decomposition.hpp"
#include "rtw/errors.hpp"
#include "rtw/graph.hpp"
#include "rtw/hpid.hpp"
#include "rtw/io.hpp"
#include "rtw/optimal_minimalization.hpp"
#include "rtw/oracle.hpp"
#include "rtw/pmc.hpp"
#include "rtw/safe_separators.hpp"
#include "rtw/solver.hpp"
#include "rtw/vertex_set.hpp"
