#pragma once

// Umbrella header: the whole library in one include.

#include "analysis.hpp"
#include "asymptotic.hpp"
#include "config.hpp"
#include "convergence.hpp"
#include "errors.hpp"
#include "extraction.hpp"
#include "fixedpoint.hpp"
#include "fixtures.hpp"
#include "gridfn.hpp"
#include "minimax.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "point.hpp"
#include "probes.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "rotund.hpp"
#include "seb.hpp"
#include "space.hpp"
#include "version.hpp"
