// corrtcl.hpp — Umbrella header.
#pragma once

#include "corrtcl/bath.hpp"
#include "corrtcl/brute_force_bath.hpp"
#include "corrtcl/correlation_term.hpp"
#include "corrtcl/dephasing_exact.hpp"
#include "corrtcl/error.hpp"
#include "corrtcl/initial_state.hpp"
#include "corrtcl/linalg.hpp"
#include "corrtcl/quadrature.hpp"
#include "corrtcl/scenario.hpp"
#include "corrtcl/tcl2_solver.hpp"
