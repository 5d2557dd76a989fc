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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vqemit {

/// The project-wide random engine. Fixed so that a seed means the same
/// stream on every platform that ships a conforming mt19937_64.
using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to spread structured seeds over 64 bits.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a master seed and task coordinates into one task seed. Order of
/// the parts matters; the same parts always give the same seed.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> parts) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng) noexcept;

}  // namespace vqemit
