#pragma once

#include "lsdt/random.hpp"
#include "lsdt/reward_models.hpp"
#include "lsdt/graph.hpp"
#include "lsdt/uig.hpp"
#include "lsdt/side_info.hpp"
#include "lsdt/lp.hpp"
#include "lsdt/exploration.hpp"
#include "lsdt/lower_bound.hpp"
#include "lsdt/policy.hpp"
#include "lsdt/lsdt_csi.hpp"
#include "lsdt/lsdt_psi.hpp"
#include "lsdt/lsdt_ts.hpp"
#include "lsdt/policy_factory.hpp"
#include "lsdt/bench/stats.hpp"
#include "lsdt/bench/config.hpp"
#include "lsdt/bench/experiment.hpp"
#include "lsdt/bench/sweep.hpp"
#include "lsdt/bench/regret_bounds.hpp"
#include "lsdt/bench/output.hpp"
#include "lsdt/offline/ratings.hpp"
#include "lsdt/offline/estimation.hpp"
#include "lsdt/offline/replay.hpp"
