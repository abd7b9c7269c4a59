#pragma once

#include "rtlab/arith/characters.hpp"
#include "rtlab/arith/class_numbers.hpp"
#include "rtlab/arith/dirichlet.hpp"
#include "rtlab/arith/eigenform.hpp"
#include "rtlab/arith/hecke_recovery.hpp"
#include "rtlab/arith/primes.hpp"
#include "rtlab/arith/trace_formula.hpp"
