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

#include "xtqm/random.hpp"

#include <cmath>

namespace xtqm {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over (seed, index)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform(Rng &rng, double lo, double hi) {
    // Built from raw bits so results do not depend on the standard library's distributions.
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double gaussian(Rng &rng) {
    double u1 = uniform(rng, 0.0, 1.0);
    double u2 = uniform(rng, 0.0, 1.0);
    if (u1 < 1e-300) {
        u1 = 1e-300;
    }
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Operator random_matrix(Rng &rng, std::size_t side) {
    auto n = static_cast<Eigen::Index>(side);
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double re = gaussian(rng);
            double im = gaussian(rng);
            m(i, j) = cplx(re, im);
        }
    }
    return Operator(std::move(m));
}

Operator random_hermitian(Rng &rng, std::size_t side) {
    Matrix g = random_matrix(rng, side).matrix();
    Matrix h = 0.5 * (g + g.adjoint());
    return Operator(std::move(h));
}

StateVector random_state(Rng &rng, std::size_t side) {
    auto n = static_cast<Eigen::Index>(side);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double re = gaussian(rng);
        double im = gaussian(rng);
        v(i) = cplx(re, im);
    }
    v /= v.norm();
    return StateVector(std::move(v));
}

Operator random_density(Rng &rng, std::size_t side) {
    Matrix g = random_matrix(rng, side).matrix();
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return Operator(std::move(rho));
}

}  // namespace xtqm
