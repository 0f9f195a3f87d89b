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

#ifndef XTQM_PROPAGATOR_HPP
#define XTQM_PROPAGATOR_HPP

#include <cstddef>

#include "xtqm/foliation.hpp"
#include "xtqm/kg_modes.hpp"
#include "xtqm/quadrature.hpp"

namespace xtqm {

/// Gaussian momentum window shared by the mode engine and the oracle; depends on p only
/// through contractions with n, so it is Lorentz invariant under (Lambda p, Lambda n).
double momentum_window(const SpaceVector &p, const Foliation &fol, double cutoff);

struct PropagatorResult {
    cplx value;
    /// Same sum on every other grid point.
    cplx coarse_value;
    /// |value - coarse_value| / |value|
    double change = 0.0;
    std::size_t points_per_axis = 0;
    double spacing = 0.0;
};

/// Leading small-tau term of the mode sum for <phi(x) phi(y)>, 1+1 dimensions:
/// int d^2p/(2 pi)^2 (||n||^2 / 2E_p(n)) [i/(p.n - E + i eps ||n||^2) - i/(p.n + E - i eps ||n||^2)]
///     W(p) e^{-i p.delta}.
/// Inner p0 columns have their two poles subtracted and integrated in closed form; the smooth
/// remainder uses the trapezoid rule on a lab-frame grid. No accuracy check.
PropagatorResult propagator_grid(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg);

/// propagator_grid, throwing AccuracyError when change exceeds cfg.tolerance.
PropagatorResult feynman_propagator(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg);

/// int d^2p/(2 pi)^2 W(p) i e^{-i p.delta} / (p^2 - m^2 + i 2 m eps) by nested adaptive
/// Gauss-Kronrod, p0 innermost with breakpoints on the mass shell.
QuadratureResult propagator_oracle(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg,
                                   double tolerance = 1e-7);

/// Window-free continuum value: K0(m r)/(2 pi) spacelike, -(Y0(m s) + i J0(m s))/4 timelike.
cplx propagator_closed_form(const SpaceVector &delta, double mass);

struct CovarianceReport {
    cplx value_n;
    cplx value_boosted;
    double rel_diff = 0.0;
    double change_n = 0.0;
    double change_boosted = 0.0;
};

/// Propagator at (x, y) under n against (Lambda x, Lambda y) under Lambda n.
CovarianceReport covariance_check(const SpaceVector &x, const SpaceVector &y, const Foliation &fol,
                                  const BoostMatrix &boost, const PropagatorConfig &cfg);

}  // namespace xtqm

#endif
