// SPDX-License-Identifier: Apache-2.0
//
// iacsi: interference alignment performance analysis under quantized CSI
// Copyright (C) 2026 The iacsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IACSI_IACSI_HPP
#define IACSI_IACSI_HPP

#include "analysis.hpp"
#include "channel.hpp"
#include "double_double.hpp"
#include "error.hpp"
#include "ia_solver.hpp"
#include "mixture.hpp"
#include "numeric.hpp"
#include "planner.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "runner.hpp"
#include "scenario.hpp"
#include "simulator.hpp"
#include "special_functions.hpp"
#include "system.hpp"

#endif
