#pragma once

#include "psiroots/cache.hpp"
#include "psiroots/constants.hpp"
#include "psiroots/errors.hpp"
#include "psiroots/format.hpp"
#include "psiroots/hyperfactorial.hpp"
#include "psiroots/report.hpp"
#include "psiroots/series.hpp"
#include "psiroots/special_functions.hpp"
#include "psiroots/summation.hpp"
#include "psiroots/zeros.hpp"
