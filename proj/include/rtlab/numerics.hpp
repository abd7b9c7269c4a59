#pragma once

#include "rtlab/numerics/gauss_legendre.hpp"
#include "rtlab/numerics/hypergeometric.hpp"
#include "rtlab/numerics/quadrature.hpp"
#include "rtlab/numerics/special.hpp"
#include "rtlab/numerics/summation.hpp"
