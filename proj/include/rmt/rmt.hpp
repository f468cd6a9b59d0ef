#pragma once

#include "error.hpp"
#include "feature_names.hpp"
#include "features.hpp"
#include "ingest.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "signal.hpp"
#include "stats.hpp"
#include "synth.hpp"
#include "vertex.hpp"
