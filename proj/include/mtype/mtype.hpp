#pragma once

// Umbrella header: optimal M-type approximation of discrete probability
// distributions (variational distance, both informational divergences, both
// chi-square divergences), reverse I-projection with approximation-error
// bounds, row-wise quantization of Markov transition matrices, and an
// exhaustive oracle for small instances.

#include "mtype/costs.hpp"
#include "mtype/distribution.hpp"
#include "mtype/errors.hpp"
#include "mtype/greedy.hpp"
#include "mtype/markov.hpp"
#include "mtype/oracle.hpp"
#include "mtype/projection.hpp"
