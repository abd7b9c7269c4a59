#pragma once

#include "rtlab/tail/reg_tail.hpp"
