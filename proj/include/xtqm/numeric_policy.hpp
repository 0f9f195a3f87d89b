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

#ifndef XTQM_NUMERIC_POLICY_HPP
#define XTQM_NUMERIC_POLICY_HPP

#include <cstddef>

namespace xtqm {

/// Every tolerance and resource limit used by the library lives here.
struct NumericPolicy {
    double equality = 1e-10;
    double overlap = 1e-12;
    double degenerate_normalization = 1e-12;
    double normality = 1e-12;
    double truncation_bound = 1e-12;
    double zero_eigenvalue = 1e-13;
    double unit_norm = 1e-10;
    std::size_t dimension_cap = std::size_t{1} << 14;
};

/// Process-wide policy. Mutable so the CLI can apply overrides once at startup.
NumericPolicy &global_policy();

inline const NumericPolicy &policy() {
    return global_policy();
}

}  // namespace xtqm

#endif
