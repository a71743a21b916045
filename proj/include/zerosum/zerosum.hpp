#pragma once

// Umbrella header for the whole library.

#include "zerosum/analysis.hpp"
#include "zerosum/atoms.hpp"
#include "zerosum/cache.hpp"
#include "zerosum/characterize.hpp"
#include "zerosum/cli.hpp"
#include "zerosum/delta_star.hpp"
#include "zerosum/factorization.hpp"
#include "zerosum/group.hpp"
#include "zerosum/lattice.hpp"
#include "zerosum/orbits.hpp"
#include "zerosum/parallel.hpp"
#include "zerosum/rational.hpp"
#include "zerosum/report.hpp"
#include "zerosum/sequence.hpp"
#include "zerosum/verify.hpp"
