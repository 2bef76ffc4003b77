// Copyright 2026 The crstates Authors
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

#include "crstates/bipartite_ops.hpp"
#include "crstates/constructors.hpp"
#include "crstates/distill_probe.hpp"
#include "crstates/errors.hpp"
#include "crstates/hermitian_basis.hpp"
#include "crstates/json_io.hpp"
#include "crstates/linalg.hpp"
#include "crstates/random.hpp"
#include "crstates/reducibility.hpp"
#include "crstates/state.hpp"
#include "crstates/superoperator.hpp"
#include "crstates/tolerance.hpp"
