#pragma once

#include "bitset.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "lll.hpp"
#include "model.hpp"
#include "search.hpp"
#include "solvers.hpp"
