#ifndef RANDCX_RANDCX_HPP
#define RANDCX_RANDCX_HPP

#include "randcx/error.hpp"
#include "randcx/rational.hpp"
#include "randcx/complex.hpp"
#include "randcx/sc2_io.hpp"
#include "randcx/rng.hpp"
#include "randcx/stats.hpp"
#include "randcx/random.hpp"
#include "randcx/gf2.hpp"
#include "randcx/linalg.hpp"
#include "randcx/homology.hpp"
#include "randcx/maxflow.hpp"
#include "randcx/density.hpp"
#include "randcx/pi1.hpp"
#include "randcx/classify.hpp"
#include "randcx/csv.hpp"
#include "randcx/sweep.hpp"
#include "randcx/plot.hpp"

#endif
