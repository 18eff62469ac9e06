#pragma once

#include <doctest.h>

#include "sampling.hpp"

namespace linkform::testing {

using sampling::draw;
using sampling::draw_admissible;
using sampling::random_family;

}  // namespace linkform::testing
