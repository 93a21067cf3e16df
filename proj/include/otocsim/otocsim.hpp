// Copyright 2026 The otocsim Authors
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

#pragma once

#include "otocsim/config.hpp"
#include "otocsim/errors.hpp"
#include "otocsim/experiment.hpp"
#include "otocsim/heatmap.hpp"
#include "otocsim/ising.hpp"
#include "otocsim/mitigation.hpp"
#include "otocsim/noise.hpp"
#include "otocsim/otoc.hpp"
#include "otocsim/qsim.hpp"
#include "otocsim/runner.hpp"
#include "otocsim/surface_io.hpp"
#include "otocsim/trotter_weave.hpp"
