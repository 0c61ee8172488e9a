#pragma once

#include "moebius/core.hpp"
#include "moebius/extended_plane.hpp"
#include "moebius/moebius_map.hpp"
#include "moebius/operator_topology.hpp"
#include "moebius/spectral_classify.hpp"
#include "moebius/topo_decision.hpp"
