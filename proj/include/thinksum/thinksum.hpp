#pragma once

/// Convenience umbrella: pulls in the whole library.

#include "thinksum/aggregate.hpp"
#include "thinksum/backend.hpp"
#include "thinksum/cache.hpp"
#include "thinksum/constraints.hpp"
#include "thinksum/deduction.hpp"
#include "thinksum/emoji.hpp"
#include "thinksum/http_backend.hpp"
#include "thinksum/latent_class.hpp"
#include "thinksum/logprob.hpp"
#include "thinksum/metrics.hpp"
#include "thinksum/mock_backend.hpp"
#include "thinksum/parsing.hpp"
#include "thinksum/pipelines.hpp"
#include "thinksum/prompts.hpp"
#include "thinksum/runner.hpp"
#include "thinksum/slot_template.hpp"
#include "thinksum/task.hpp"
#include "thinksum/task_file.hpp"
