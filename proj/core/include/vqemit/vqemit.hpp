// Copyright 2026 The vqemit Authors
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

#include "vqemit/chem.hpp"
#include "vqemit/circuits.hpp"
#include "vqemit/config.hpp"
#include "vqemit/densesim.hpp"
#include "vqemit/error.hpp"
#include "vqemit/io.hpp"
#include "vqemit/mitigation.hpp"
#include "vqemit/noise.hpp"
#include "vqemit/rng.hpp"
#include "vqemit/vqe.hpp"
