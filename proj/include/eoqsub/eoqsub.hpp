#pragma once

// Umbrella header: two-product lot-sizing with one-way stockout substitution
// and imperfect-quality screening.

#include "eoqsub/cost.hpp"
#include "eoqsub/minimize.hpp"
#include "eoqsub/sensitivity.hpp"
#include "eoqsub/serialize.hpp"
#include "eoqsub/simulate.hpp"
#include "eoqsub/solvers.hpp"
#include "eoqsub/types.hpp"
#include "eoqsub/validate.hpp"
#include "eoqsub/verbatim.hpp"
#include "eoqsub/verify.hpp"
#include "eoqsub/version.hpp"
