#pragma once

#include "igt/error.hpp"
#include "igt/text.hpp"
#include "igt/igt_model.hpp"
#include "igt/normalization_table.hpp"
#include "igt/gloss_tokenizer.hpp"
#include "igt/gloss_parser.hpp"
#include "igt/record_io.hpp"
#include "igt/normalizer.hpp"
#include "igt/aligner.hpp"
#include "igt/subprocess.hpp"
#include "igt/pivot_pipeline.hpp"
#include "igt/inflection.hpp"
#include "igt/eval_metrics.hpp"
