#pragma once

#include "rtlab/measures/satake_measure.hpp"
#include "rtlab/measures/satake_polynomial.hpp"
#include "rtlab/measures/spectral_density.hpp"
