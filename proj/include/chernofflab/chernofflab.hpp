// Copyright 2026 The chernoff-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "chernofflab/errors.hpp"
#include "chernofflab/hermlab.hpp"
#include "chernofflab/states.hpp"
#include "chernofflab/measurements.hpp"
#include "chernofflab/sdp/problem.hpp"
#include "chernofflab/sdp/solver.hpp"
#include "chernofflab/sets.hpp"
#include "chernofflab/sdp/formulations.hpp"
#include "chernofflab/chernoff.hpp"
#include "chernofflab/testing.hpp"
#include "chernofflab/overlaps.hpp"
#include "chernofflab/io.hpp"
