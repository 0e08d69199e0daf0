#pragma once

#include "geql/agents.hpp"
#include "geql/clustering.hpp"
#include "geql/core.hpp"
#include "geql/envs/blackjack.hpp"
#include "geql/envs/gridworld.hpp"
#include "geql/envs/nchain.hpp"
#include "geql/envs/terrain.hpp"
#include "geql/envs/visual.hpp"
#include "geql/exploration.hpp"
#include "geql/forest.hpp"
#include "geql/harness.hpp"
#include "geql/linear.hpp"
#include "geql/qapprox.hpp"
#include "geql/tree.hpp"
