#pragma once

#include "dsc/bench.hpp"
#include "dsc/certificate_io.hpp"
#include "dsc/certify.hpp"
#include "dsc/cut_player.hpp"
#include "dsc/error.hpp"
#include "dsc/game.hpp"
#include "dsc/generators.hpp"
#include "dsc/graph.hpp"
#include "dsc/graph_io.hpp"
#include "dsc/matching.hpp"
#include "dsc/matching_player.hpp"
#include "dsc/maxflow.hpp"
#include "dsc/rational.hpp"
