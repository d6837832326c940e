#pragma once

#include "gpi/common.hpp"
#include "gpi/gridspec.hpp"
#include "gpi/moments.hpp"
#include "gpi/oracle.hpp"
#include "gpi/quadrature.hpp"
#include "gpi/report.hpp"
#include "gpi/rng.hpp"
#include "gpi/special_functions.hpp"
#include "gpi/verify.hpp"
