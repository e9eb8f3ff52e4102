#pragma once

// Umbrella header: elliptic special functions, the eight-vertex R-matrix and
// its symmetric fusions, the 21-vertex gauge form, fused face weights, and
// the (dual) intertwining vectors connecting them, together with the
// verification suite runner and report serialization.

#include "ellfuse/core.hpp"
#include "ellfuse/face.hpp"
#include "ellfuse/fateev.hpp"
#include "ellfuse/fusion.hpp"
#include "ellfuse/intertwiner.hpp"
#include "ellfuse/report.hpp"
#include "ellfuse/sampling.hpp"
#include "ellfuse/suites.hpp"
#include "ellfuse/tensor.hpp"
#include "ellfuse/vertex.hpp"
