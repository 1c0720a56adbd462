#pragma once

#include "fabba/aggregation.hpp"
#include "fabba/baselines.hpp"
#include "fabba/bench.hpp"
#include "fabba/compression.hpp"
#include "fabba/core_model.hpp"
#include "fabba/io.hpp"
#include "fabba/metrics.hpp"
#include "fabba/pipeline.hpp"
