#pragma once

// Umbrella header for the vertex-frequency analysis library.

#include "vfa/clustering.hpp"
#include "vfa/error.hpp"
#include "vfa/graph.hpp"
#include "vfa/io.hpp"
#include "vfa/kernel.hpp"
#include "vfa/localization.hpp"
#include "vfa/operators.hpp"
#include "vfa/spectral.hpp"
#include "vfa/wgft.hpp"
