#pragma once

#include "mechkit/errors.hpp"
#include "mechkit/scalar.hpp"
#include "mechkit/instance.hpp"
#include "mechkit/analysis.hpp"
#include "mechkit/type_graph.hpp"
#include "mechkit/transform.hpp"
#include "mechkit/matching.hpp"
#include "mechkit/replica_surrogate.hpp"
#include "mechkit/simplex.hpp"
#include "mechkit/amd_lp.hpp"
#include "mechkit/fixtures.hpp"
