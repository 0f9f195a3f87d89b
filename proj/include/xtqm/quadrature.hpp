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

#ifndef XTQM_QUADRATURE_HPP
#define XTQM_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace xtqm {

struct QuadratureResult {
    std::complex<double> value;
    /// Error estimate of the real part plus that of the imaginary part.
    double error = 0.0;
};

struct QuadratureOptions {
    double abs_tolerance = 1e-12;
    double rel_tolerance = 1e-10;
    /// Subinterval budget per real integral.
    std::size_t limit = 4000;
};

/// Adaptive 21-point Gauss-Kronrod (QUADPACK qag) on each panel between breakpoints.
/// Real and imaginary parts are integrated separately. Throws AccuracyError when the
/// requested tolerance is not reached.
QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)> &f, double a, double b,
                                    std::vector<double> breakpoints = {}, const QuadratureOptions &options = {});

}  // namespace xtqm

#endif
