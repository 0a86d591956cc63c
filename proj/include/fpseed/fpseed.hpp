#pragma once

#include "fpseed/epidemic.hpp"
#include "fpseed/generators.hpp"
#include "fpseed/graph.hpp"
#include "fpseed/io.hpp"
#include "fpseed/metrics.hpp"
#include "fpseed/parallel.hpp"
#include "fpseed/rng.hpp"
#include "fpseed/seeding.hpp"
#include "fpseed/version.hpp"
