#pragma once

// Umbrella header. http_client.hpp is not included here; it needs OpenSSL.

#include "grasp/action.hpp"
#include "grasp/agents.hpp"
#include "grasp/benchmark_io.hpp"
#include "grasp/env.hpp"
#include "grasp/eval.hpp"
#include "grasp/generate.hpp"
#include "grasp/grid.hpp"
#include "grasp/json_io.hpp"
#include "grasp/llm_client.hpp"
#include "grasp/prompt.hpp"
#include "grasp/report.hpp"
#include "grasp/rng.hpp"
#include "grasp/svg.hpp"
#include "grasp/text_render.hpp"
