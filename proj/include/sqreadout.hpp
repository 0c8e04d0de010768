// Copyright 2026 The sqreadout Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SQREADOUT_SQREADOUT_HPP
#define SQREADOUT_SQREADOUT_HPP

#include "sqreadout/backaction.hpp"
#include "sqreadout/cavity_dynamics.hpp"
#include "sqreadout/config.hpp"
#include "sqreadout/csv.hpp"
#include "sqreadout/erf.hpp"
#include "sqreadout/errors.hpp"
#include "sqreadout/model_params.hpp"
#include "sqreadout/probe_states.hpp"
#include "sqreadout/readout_metrics.hpp"
#include "sqreadout/rng.hpp"
#include "sqreadout/shot_simulator.hpp"
#include "sqreadout/sweep_engine.hpp"

#endif  // SQREADOUT_SQREADOUT_HPP
