#pragma once

// Umbrella header.

#include "tstab/big_count.hpp"
#include "tstab/bitset.hpp"
#include "tstab/errors.hpp"
#include "tstab/exact_counts.hpp"
#include "tstab/experiment.hpp"
#include "tstab/formulas.hpp"
#include "tstab/graph.hpp"
#include "tstab/moments.hpp"
#include "tstab/numeric.hpp"
#include "tstab/params.hpp"
#include "tstab/peeling.hpp"
#include "tstab/prng.hpp"
#include "tstab/saddle.hpp"
#include "tstab/stable_sets.hpp"
#include "tstab/trunc_exp_poly.hpp"
