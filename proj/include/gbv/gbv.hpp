#pragma once

// Umbrella header: generalized bounded-variation functionals on sampled
// periodic functions — family and partition variations, the inclusion
// criterion between the two classes, the closed-form extremal problem, and
// the separating counterexample constructor.

#include "gbv/criterion.hpp"
#include "gbv/errors.hpp"
#include "gbv/extremal.hpp"
#include "gbv/forge.hpp"
#include "gbv/grid_function.hpp"
#include "gbv/json_io.hpp"
#include "gbv/oracle.hpp"
#include "gbv/rational.hpp"
#include "gbv/report.hpp"
#include "gbv/sequences.hpp"
#include "gbv/variation.hpp"
#include "gbv/variation_multi.hpp"
#include "gbv/version.hpp"
