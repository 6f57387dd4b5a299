// Copyright 2026 The compactlin Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include "compactlin/rational.hpp"
#include "compactlin/exact_lp.hpp"
#include "compactlin/bqp_model.hpp"
#include "compactlin/multipliers.hpp"
#include "compactlin/milp_model.hpp"
#include "compactlin/linearizer.hpp"
#include "compactlin/relaxation.hpp"
#include "compactlin/cover_solver.hpp"
#include "compactlin/verifier.hpp"
#include "compactlin/instance_gen.hpp"
#include "compactlin/milp_writer.hpp"
#include "compactlin/json_io.hpp"
