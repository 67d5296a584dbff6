#pragma once

// Umbrella header: the whole library in one include.

#include "ctrlseg/error.hpp"
#include "ctrlseg/corpus/types.hpp"
#include "ctrlseg/corpus/text_format.hpp"
#include "ctrlseg/corpus/json_format.hpp"
#include "ctrlseg/corpus/validate.hpp"
#include "ctrlseg/tagger/tagger.hpp"
#include "ctrlseg/control/rules.hpp"
#include "ctrlseg/control/tree.hpp"
#include "ctrlseg/control/pipeline.hpp"
#include "ctrlseg/control/render.hpp"
#include "ctrlseg/anaphora/classes.hpp"
#include "ctrlseg/anaphora/anaphora.hpp"
#include "ctrlseg/stats/incomplete_gamma.hpp"
#include "ctrlseg/stats/chi_square.hpp"
#include "ctrlseg/stats/metrics.hpp"
#include "ctrlseg/report.hpp"
