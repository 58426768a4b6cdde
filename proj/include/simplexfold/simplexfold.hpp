#pragma once

#include "simplexfold/catalog.hpp"
#include "simplexfold/cone.hpp"
#include "simplexfold/dynamics.hpp"
#include "simplexfold/folding.hpp"
#include "simplexfold/io.hpp"
#include "simplexfold/maps.hpp"
#include "simplexfold/polynomial.hpp"
#include "simplexfold/poly_parse.hpp"
#include "simplexfold/positivity.hpp"
#include "simplexfold/sampler.hpp"
#include "simplexfold/simplex.hpp"

namespace simplexfold {
inline constexpr const char* kVersion = "0.1.0";
}
