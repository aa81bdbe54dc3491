#pragma once

// Convenience header for the whole library (the cli/ headers are separate and
// additionally need nlohmann/json).

#include "convexsplit/crossing.hpp"
#include "convexsplit/curves.hpp"
#include "convexsplit/errors.hpp"
#include "convexsplit/exactgeom.hpp"
#include "convexsplit/kseq.hpp"
#include "convexsplit/ordertype.hpp"
#include "convexsplit/ramsey.hpp"
#include "convexsplit/rational.hpp"
