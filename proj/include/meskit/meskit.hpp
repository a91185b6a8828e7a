// Copyright 2026 The meskit Authors
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


// Umbrella header for the meskit library.
#pragma once

#include "meskit/errors.hpp"
#include "meskit/tensor_core.hpp"
#include "meskit/states.hpp"
#include "meskit/superop.hpp"
#include "meskit/choi_sigma.hpp"
#include "meskit/extension.hpp"
#include "meskit/classify.hpp"
#include "meskit/lemma_checks.hpp"
