// Copyright 2026 The servopneu Authors
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

#include "servopneu/actuator.hpp"
#include "servopneu/builtin.hpp"
#include "servopneu/friction.hpp"
#include "servopneu/gasflow.hpp"
#include "servopneu/plot.hpp"
#include "servopneu/scenario.hpp"
#include "servopneu/scenario_io.hpp"
#include "servopneu/signal.hpp"
#include "servopneu/simulator.hpp"
#include "servopneu/trace_io.hpp"
#include "servopneu/transmission.hpp"
#include "servopneu/valve.hpp"
