// Copyright 2026 The QSCA Authors
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

// Umbrella header.

#pragma once

#include "bits.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "frt_quantum.hpp"
#include "operator.hpp"
#include "quantize.hpp"
#include "random.hpp"
#include "sca_core.hpp"
#include "sca_io.hpp"
#include "spin_chain.hpp"
#include "state_vector.hpp"
#include "unitary_compile.hpp"
