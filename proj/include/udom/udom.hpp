#pragma once

#include "udom/graph.hpp"
#include "udom/domination.hpp"
#include "udom/independent_sets.hpp"
#include "udom/oracle.hpp"
#include "udom/path_decomposition.hpp"
#include "udom/pathwidth_dp.hpp"
#include "udom/approx.hpp"
#include "udom/is_reduction.hpp"
#include "udom/csp.hpp"
#include "udom/csp_reduction.hpp"
#include "udom/gadget_decomposition.hpp"
