#pragma once
// Umbrella header: exact and Monte Carlo analysis of rainbow planar matchings
// of coloured K_{n,n} and of planar matchings (LIS) of uniform random
// injections into {1..k}.

#include "planarmatch/bounds.hpp"
#include "planarmatch/exactprob.hpp"
#include "planarmatch/lis.hpp"
#include "planarmatch/montecarlo.hpp"
#include "planarmatch/oracles.hpp"
#include "planarmatch/rainbow.hpp"
#include "planarmatch/report.hpp"
#include "planarmatch/rng.hpp"
#include "planarmatch/sampling.hpp"
#include "planarmatch/segmented.hpp"
#include "planarmatch/types.hpp"
