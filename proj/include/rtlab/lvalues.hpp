#pragma once

#include "rtlab/lvalues/central_value.hpp"
#include "rtlab/lvalues/modular_form.hpp"
#include "rtlab/lvalues/petersson.hpp"
