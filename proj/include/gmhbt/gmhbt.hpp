#pragma once

#include "gmhbt/bench.hpp"
#include "gmhbt/design.hpp"
#include "gmhbt/error.hpp"
#include "gmhbt/filtering.hpp"
#include "gmhbt/image.hpp"
#include "gmhbt/kernel.hpp"
#include "gmhbt/lsq.hpp"
#include "gmhbt/metrics.hpp"
#include "gmhbt/noise.hpp"
#include "gmhbt/pgm.hpp"
#include "gmhbt/synthetic.hpp"
