#pragma once

#include "rtlab/harness/config.hpp"
#include "rtlab/harness/experiment.hpp"
#include "rtlab/harness/geometric_audit.hpp"
#include "rtlab/harness/spectral.hpp"
