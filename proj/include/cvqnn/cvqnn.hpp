// Copyright 2026 The cvqnn Authors
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

#include "cvqnn/charts.hpp"
#include "cvqnn/commands.hpp"
#include "cvqnn/config.hpp"
#include "cvqnn/datasets.hpp"
#include "cvqnn/fock.hpp"
#include "cvqnn/gates.hpp"
#include "cvqnn/harness.hpp"
#include "cvqnn/mlp.hpp"
#include "cvqnn/model.hpp"
#include "cvqnn/numdiff.hpp"
#include "cvqnn/optimizer.hpp"
#include "cvqnn/qnn.hpp"
#include "cvqnn/random.hpp"
#include "cvqnn/regressors.hpp"
#include "cvqnn/results_io.hpp"
#include "cvqnn/selftest.hpp"
