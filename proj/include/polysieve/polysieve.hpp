#pragma once

// Umbrella header for the sieve library: delay-differential sifting
// functions, the almost-prime exponent optimization, local root densities,
// and the weighted-sieve empirical harness.

#include "polysieve/constants.hpp"
#include "polysieve/errors.hpp"
#include "polysieve/exponent_bound.hpp"
#include "polysieve/factor.hpp"
#include "polysieve/int128.hpp"
#include "polysieve/interp.hpp"
#include "polysieve/local_density.hpp"
#include "polysieve/numerics.hpp"
#include "polysieve/primes.hpp"
#include "polysieve/reference_tables.hpp"
#include "polysieve/sifting_functions.hpp"
#include "polysieve/weighted_sieve.hpp"
