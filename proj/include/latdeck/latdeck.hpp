#pragma once

// Umbrella header: minimum-length test decks for logic and accuracy testing,
// with a guarantee against candidate/target swap misconfigurations.

#include "latdeck/ballot.hpp"
#include "latdeck/bounds.hpp"
#include "latdeck/cut.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/io.hpp"
#include "latdeck/master.hpp"
#include "latdeck/milp.hpp"
#include "latdeck/pipeline.hpp"
#include "latdeck/redteam.hpp"
#include "latdeck/solver.hpp"
#include "latdeck/swap.hpp"
#include "latdeck/swap_graph.hpp"
