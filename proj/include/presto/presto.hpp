#pragma once

#include "presto/bounds.hpp"
#include "presto/core.hpp"
#include "presto/errors.hpp"
#include "presto/exact.hpp"
#include "presto/ingest.hpp"
#include "presto/parallel.hpp"
#include "presto/rng.hpp"
#include "presto/sampler.hpp"
#include "presto/serialize.hpp"
