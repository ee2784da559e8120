#pragma once

#include "asymnorm.hpp"
#include "bregman.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "expfam.hpp"
#include "integrand.hpp"
#include "measures.hpp"
#include "measures_io.hpp"
#include "polar.hpp"
#include "polar_io.hpp"
#include "quadrature.hpp"
#include "roots.hpp"
#include "simplex.hpp"
#include "verify.hpp"
