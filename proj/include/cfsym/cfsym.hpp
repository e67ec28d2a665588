// include/cfsym/cfsym.hpp — umbrella header for the cfsym library.

#pragma once

#include "cfsym/types.hpp"
#include "cfsym/cf_core.hpp"
#include "cfsym/gk_measure.hpp"
#include "cfsym/chi_kernel.hpp"
#include "cfsym/symmetry.hpp"
#include "cfsym/census.hpp"
#include "cfsym/families.hpp"
#include "cfsym/measure_lab.hpp"
#include "cfsym/verify.hpp"
