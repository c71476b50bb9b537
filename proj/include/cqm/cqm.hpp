#pragma once

// Umbrella header.

#include "cqm/dynamics.hpp"
#include "cqm/eigen.hpp"
#include "cqm/entanglement.hpp"
#include "cqm/error.hpp"
#include "cqm/hamiltonian.hpp"
#include "cqm/io.hpp"
#include "cqm/linalg.hpp"
#include "cqm/random.hpp"
#include "cqm/spectrum.hpp"
#include "cqm/state.hpp"
#include "cqm/sweep.hpp"
#include "cqm/units.hpp"
#include "cqm/verify.hpp"
