#pragma once

// Umbrella header: F-nilpotence classification for quasi-homogeneous
// hypersurface singularities and exceptional curve configurations over
// finite fields, with prime sweeps.

#include "fnil/fields.hpp"
#include "fnil/linalg.hpp"
#include "fnil/lochom.hpp"
#include "fnil/model_io.hpp"
#include "fnil/polynomials.hpp"
#include "fnil/semilinear.hpp"
#include "fnil/snc.hpp"
#include "fnil/sweep.hpp"
