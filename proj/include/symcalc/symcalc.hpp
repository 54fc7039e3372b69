#pragma once

// Umbrella header for the symmetric quantum calculus library.

#include "symcalc/builtins.hpp"
#include "symcalc/core.hpp"
#include "symcalc/errors.hpp"
#include "symcalc/expr.hpp"
#include "symcalc/noerlund.hpp"
#include "symcalc/series.hpp"
#include "symcalc/theorems.hpp"
#include "symcalc/verify.hpp"
