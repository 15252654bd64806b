#pragma once

#include "rcec/compdata.hpp"
#include "rcec/config_io.hpp"
#include "rcec/metrics.hpp"
#include "rcec/mom.hpp"
#include "rcec/parallel.hpp"
#include "rcec/random.hpp"
#include "rcec/simgen.hpp"
#include "rcec/stability.hpp"
#include "rcec/threshold.hpp"
#include "rcec/tuning.hpp"
#include "rcec/types.hpp"
