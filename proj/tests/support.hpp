#pragma once

// Seeded random generators shared by the unit tests.

#include "diffalg/sampling.hpp"

namespace diffalg::testing {

using diffalg::random_invertible;
using diffalg::random_nilarray;
using diffalg::trial_rng;

}  // namespace diffalg::testing
