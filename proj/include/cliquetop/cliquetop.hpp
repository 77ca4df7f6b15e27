#pragma once

// Umbrella header for the clique-complex process toolkit.

#include "cliquetop/common.hpp"
#include "cliquetop/graph.hpp"
#include "cliquetop/weights.hpp"
#include "cliquetop/critical_window.hpp"
#include "cliquetop/complex.hpp"
#include "cliquetop/rank.hpp"
#include "cliquetop/homology.hpp"
#include "cliquetop/step_function.hpp"
#include "cliquetop/betti_process.hpp"
#include "cliquetop/maximality.hpp"
#include "cliquetop/spectral.hpp"
#include "cliquetop/statistics.hpp"
#include "cliquetop/harness.hpp"
