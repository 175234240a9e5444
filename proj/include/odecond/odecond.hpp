#ifndef ODECOND_ODECOND_HPP
#define ODECOND_ODECOND_HPP

// Relative-error conditioning of y0 -> e^{tA} y0: finite-time and asymptotic
// condition numbers, onset of the asymptotic regime, and randomized studies.

#include "odecond/asymptotic.hpp"
#include "odecond/condition.hpp"
#include "odecond/eig.hpp"
#include "odecond/experiments.hpp"
#include "odecond/io.hpp"
#include "odecond/matexp.hpp"
#include "odecond/models.hpp"
#include "odecond/norms.hpp"
#include "odecond/onset.hpp"
#include "odecond/rng.hpp"
#include "odecond/spectrum.hpp"
#include "odecond/stats.hpp"
#include "odecond/types.hpp"

#endif
