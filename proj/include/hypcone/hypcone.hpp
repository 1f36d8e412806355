#pragma once

// Umbrella header: the full hyperbolicity-cone verification toolkit.

#include "hypcone/bounds.hpp"
#include "hypcone/companion.hpp"
#include "hypcone/family.hpp"
#include "hypcone/hdist.hpp"
#include "hypcone/hyperbolicity.hpp"
#include "hypcone/interval.hpp"
#include "hypcone/jacobi.hpp"
#include "hypcone/json_io.hpp"
#include "hypcone/matching.hpp"
#include "hypcone/multipoly.hpp"
#include "hypcone/parallel.hpp"
#include "hypcone/rational.hpp"
#include "hypcone/rng.hpp"
#include "hypcone/roots.hpp"
#include "hypcone/spectra.hpp"
#include "hypcone/unipoly.hpp"
