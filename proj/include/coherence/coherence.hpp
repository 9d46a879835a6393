// Copyright 2026 The coherence-lab Authors
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

#include "coherence/channels.hpp"
#include "coherence/error.hpp"
#include "coherence/harness.hpp"
#include "coherence/io.hpp"
#include "coherence/mcs.hpp"
#include "coherence/measures.hpp"
#include "coherence/numerics.hpp"
#include "coherence/random.hpp"
#include "coherence/states.hpp"
