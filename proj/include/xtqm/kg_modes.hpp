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

#ifndef XTQM_KG_MODES_HPP
#define XTQM_KG_MODES_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "xtqm/foliation.hpp"
#include "xtqm/operator.hpp"

namespace xtqm {

/// Klein-Gordon mode engine parameters. Momentum-space quantities use units of the mass.
struct PropagatorConfig {
    double mass = 1.0;
    double tau = 1e-2;
    double eps_reg = 1e-4;
    /// Scale of the Gaussian momentum window exp(-q_E^2 / cutoff^2), q_E the Euclidean
    /// momentum norm in the rest frame of the foliation.
    double cutoff = 40.0;
    /// Grid points per unit momentum on each axis.
    double resolution = 8.0;
    std::size_t dimension = 2;
    /// Largest accepted |I_h - I_2h| / |I_h| for the grid engine.
    double tolerance = 1e-6;
    /// Refuse grids with more points per axis than this.
    std::size_t max_points_per_axis = 16384;

    void validate() const;
};

/// ||n|| sqrt((n^mu n^nu / ||n||^2 - eta^{mu nu}) p_mu p_nu + m^2)
double energy_Ep(const SpaceVector &p, const Foliation &fol, double mass);
/// ||n|| sqrt(sum_i (n_i.p / ||n||)^2 + m^2), using the spatial frame.
double energy_Ep_frame(const SpaceVector &p, const Foliation &fol, double mass);

/// (p.n - E_p(n)) / ||n||^2 + i eps_reg
cplx normal_frequency(const SpaceVector &p, const Foliation &fol, double mass, double eps_reg);

/// 1 / (exp(-i tau nu) - 1), nu the normal frequency. Throws SingularityError near a pole.
cplx momentum_correlator(const SpaceVector &p, const Foliation &fol, const PropagatorConfig &cfg);
/// Off-diagonal contractions vanish: returns 0 unless p == k.
cplx momentum_correlator(const SpaceVector &p, const SpaceVector &k, const Foliation &fol,
                         const PropagatorConfig &cfg);
/// i / nu, the coefficient of 1/tau.
cplx momentum_correlator_leading(const SpaceVector &p, const Foliation &fol, const PropagatorConfig &cfg);

struct SmallTauReport {
    double tau;
    /// |tau value - i/nu| at tau and tau/2
    double deviation;
    double deviation_half;
    /// deviation / tau, finite for a linear remainder
    double slope;
};
SmallTauReport small_tau_check(const SpaceVector &p, const Foliation &fol, const PropagatorConfig &cfg);

struct PartialFraction {
    cplx lhs;
    /// 2 E_eps i / (p0^2 - E_eps^2), E_eps = E_p - i eps: both pole shifts carried by the energy.
    cplx rhs;
    double diff;
    /// 2 E_p i / (p^2 - m^2 + 2 i eps E_p), agreeing only to O(eps).
    cplx leading_rhs;
    double leading_diff;
};
/// i/(p0 - E + i eps) - i/(p0 + E - i eps) against its covariant form; p = (p0, spatial...).
PartialFraction partial_fraction_identity(const SpaceVector &p, double mass, double eps);

struct MatsubaraResult {
    cplx value;
    /// Bound on the neglected |n| > mode_cap terms.
    double tail_bound;
    std::size_t mode_cap;
};
/// (1/beta) sum_n e^{-i w_n theta} / (w_n^2 + E^2), w_n = 2 pi n / beta. The 1/w_n^2 part is summed
/// in closed form so the truncated remainder falls off as mode_cap^-3.
MatsubaraResult matsubara_correlator(double theta, std::size_t mode_cap, double energy, double beta,
                                     double tolerance = 1e-6);
/// cosh(E(beta/2 - theta)) / (2 E sinh(beta E / 2))
double thermal_oscillator_exact(double theta, double energy, double beta);

struct FoliationBogoliubov {
    double alpha;
    double beta;
};
/// a(p, n_b) = alpha a(p, n_a) + beta a^dagger(-p, n_a) from matching (phi, pi) data.
FoliationBogoliubov foliation_bogoliubov(const SpaceVector &p, const Foliation &fol_a, const Foliation &fol_b,
                                         double mass);

/// Uniform grid over [-cutoff, cutoff]^D with `points` per axis.
struct MomentumGrid {
    double cutoff = 5.0;
    std::size_t points = 21;
};

struct VacuumScaling {
    double rho_n;
    double rho_scaled;
    double ratio;
};
/// (1/2) sum_grid E_p(n) at n and at s n.
VacuumScaling vacuum_energy_scaling(const Foliation &fol, double scale, double mass, const MomentumGrid &grid);

struct P0Modes {
    std::vector<double> frequencies;
    /// F diag(exp(i eps w_k)) F^dagger with F_jk = exp(-2 pi i j k / N) / sqrt(N)
    Matrix shift;
    /// max |shift - P|, P|j> = |j+1 mod N>
    double residual;
};
P0Modes discrete_p0_modes(std::size_t slices, double step);

}  // namespace xtqm

#endif
