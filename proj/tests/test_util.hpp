#pragma once

#include "nilprog/sampling.hpp"

namespace nilprog::testutil {

using nilprog::Rng;
using nilprog::random_element;
using nilprog::random_element_min_weight;
using nilprog::small_rational;

}  // namespace nilprog::testutil
