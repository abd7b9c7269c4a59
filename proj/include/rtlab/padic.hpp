#pragma once

#include "rtlab/padic/laurent.hpp"
#include "rtlab/padic/local_integrals.hpp"
#include "rtlab/padic/membership.hpp"
