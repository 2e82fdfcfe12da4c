#pragma once
// Umbrella header.

#include "phipi/bigreal.hpp"
#include "phipi/cyclotomic.hpp"
#include "phipi/errors.hpp"
#include "phipi/oracles.hpp"
#include "phipi/q5.hpp"
#include "phipi/rational.hpp"
#include "phipi/series.hpp"
