#pragma once

#include "rtlab/arch/arch_local.hpp"
#include "rtlab/arch/regular.hpp"
