#pragma once
// Umbrella header.

#include "stepfit/dp.hpp"
#include "stepfit/fisher.hpp"
#include "stepfit/kernels.hpp"
#include "stepfit/monotone.hpp"
#include "stepfit/oracle.hpp"
#include "stepfit/pav.hpp"
#include "stepfit/reduced.hpp"
#include "stepfit/series.hpp"
#include "stepfit/smawk.hpp"
#include "stepfit/step_function.hpp"
