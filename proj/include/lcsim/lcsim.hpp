#pragma once

// Umbrella header.

#include "lcsim/value.hpp"
#include "lcsim/graph.hpp"
#include "lcsim/generators.hpp"
#include "lcsim/graph_io.hpp"
#include "lcsim/morphism.hpp"
#include "lcsim/covering.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/trace_io.hpp"
#include "lcsim/lift.hpp"
#include "lcsim/normalized.hpp"
#include "lcsim/mazurkiewicz.hpp"
#include "lcsim/gssp.hpp"
#include "lcsim/family.hpp"
#include "lcsim/chi.hpp"
#include "lcsim/carto.hpp"
#include "lcsim/algorithms.hpp"
#include "lcsim/universal.hpp"
#include "lcsim/termination.hpp"
