// Copyright 2026 The xtqm Authors
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

#ifndef XTQM_RANDOM_HPP
#define XTQM_RANDOM_HPP

#include <cstdint>
#include <random>

#include "xtqm/operator.hpp"

namespace xtqm {

using Rng = std::mt19937_64;

/// Seed for trial `index` of a suite seeded with `seed`; independent of thread scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

double uniform(Rng &rng, double lo, double hi);
double gaussian(Rng &rng);

/// Entries i.i.d. complex Gaussian.
Operator random_matrix(Rng &rng, std::size_t side);
/// (G + G^dagger)/2 with G complex Gaussian.
Operator random_hermitian(Rng &rng, std::size_t side);
/// Unit vector, complex Gaussian direction.
StateVector random_state(Rng &rng, std::size_t side);
/// Positive semidefinite, unit trace.
Operator random_density(Rng &rng, std::size_t side);

}  // namespace xtqm

#endif
