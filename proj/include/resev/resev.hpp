#pragma once

// Research-assessment analytics: peer-review score tables, sector-normalized
// bibliometric indicators, area-level aggregation, and the statistics that
// compare the two evaluation approaches.

#include "resev/area_aggregate.hpp"
#include "resev/compare.hpp"
#include "resev/corpus.hpp"
#include "resev/csv.hpp"
#include "resev/error.hpp"
#include "resev/indicators.hpp"
#include "resev/percentile.hpp"
#include "resev/pipeline.hpp"
#include "resev/report.hpp"
#include "resev/synth.hpp"
#include "resev/version.hpp"
#include "resev/vtr_score.hpp"
