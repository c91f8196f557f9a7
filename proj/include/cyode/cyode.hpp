#pragma once

// Umbrella header.

#include "constructions.hpp"
#include "families.hpp"
#include "frobenius.hpp"
#include "log_series.hpp"
#include "modp.hpp"
#include "pade.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rational_function.hpp"
#include "ring.hpp"
#include "series.hpp"
#include "theta_operator.hpp"
#include "zmod.hpp"
