#pragma once

// Triangulations of the Moebius strip M_n, their flips and flip-graphs.

#include "arc_classify.hpp"
#include "arcs.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "flip_graph.hpp"
#include "json_io.hpp"
#include "surface_map.hpp"
