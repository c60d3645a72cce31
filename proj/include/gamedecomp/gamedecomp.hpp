#pragma once

// Exact decomposition of finite normal-form games into pure-potential,
// nonstrategic and pure-harmonic components.

#include "gamedecomp/rational.hpp"
#include "gamedecomp/matrix.hpp"
#include "gamedecomp/linalg.hpp"
#include "gamedecomp/game.hpp"
#include "gamedecomp/game_io.hpp"
#include "gamedecomp/projectors.hpp"
#include "gamedecomp/decomposer.hpp"
#include "gamedecomp/analysis.hpp"
