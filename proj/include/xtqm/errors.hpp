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

#ifndef XTQM_ERRORS_HPP
#define XTQM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xtqm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid arguments: shape mismatch, out-of-range index, wrong kind.
struct InvalidArgument : Error {
    using Error::Error;
};

/// Dimension would exceed the configured cap.
struct ResourceError : Error {
    using Error::Error;
};

/// Non-finite input or a numerical breakdown.
struct NumericError : Error {
    using Error::Error;
};

/// A normalizing overlap or trace is too small to divide by.
struct DegenerateNormalization : Error {
    using Error::Error;
};

/// Evaluation point too close to a pole.
struct SingularityError : Error {
    using Error::Error;
};

/// Quadrature or series did not reach the requested accuracy.
struct AccuracyError : Error {
    double achieved;
    AccuracyError(const std::string &what, double achieved_bound) : Error(what), achieved(achieved_bound) {
    }
};

/// Lattice evolution blew up.
struct StabilityError : Error {
    using Error::Error;
};

/// Fock truncation too small for the requested bound.
struct TruncationError : Error {
    std::size_t required_n_max;
    TruncationError(const std::string &what, std::size_t required) : Error(what), required_n_max(required) {
    }
};

}  // namespace xtqm

#endif
