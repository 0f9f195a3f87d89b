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

#ifndef XTQM_DIRAC_HPP
#define XTQM_DIRAC_HPP

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "xtqm/foliation.hpp"
#include "xtqm/operator.hpp"

namespace xtqm {

using Spinor = Eigen::Vector4cd;
using RowSpinor = Eigen::RowVector4cd;
using Matrix4 = Eigen::Matrix4cd;

/// gamma^0..gamma^3, metric (+,-,-,-).
class GammaSet {
   public:
    explicit GammaSet(std::array<Matrix4, 4> gammas);
    /// Standard Dirac representation.
    static GammaSet dirac();

    const Matrix4 &operator[](std::size_t mu) const {
        return gammas_.at(mu);
    }
    /// M^{-1} gamma^mu M for every mu.
    GammaSet similarity(const Matrix4 &m) const;
    /// max over mu <= nu of |{gamma^mu, gamma^nu} - 2 eta^{mu nu}|
    double clifford_residual() const;
    /// gamma^mu v_mu for contravariant v.
    Matrix4 slash(const SpaceVector &v) const;
    /// [gamma^mu, gamma^nu]
    Matrix4 commutator(std::size_t mu, std::size_t nu) const;

   private:
    std::array<Matrix4, 4> gammas_;
};

/// gamma.n; requires ||n|| = 1.
Matrix4 gamma_prime0(const Foliation &fol, const GammaSet &g = GammaSet::dirac());

/// pi = i psi_bar gamma.n / ||n||^2, which is i psi_bar gamma.n at unit norm.
RowSpinor dirac_momentum(const RowSpinor &psi_bar, const Foliation &fol, const GammaSet &g = GammaSet::dirac());
/// psi_bar = -i pi gamma.n
RowSpinor dirac_bar_from_momentum(const RowSpinor &pi, const Foliation &fol, const GammaSet &g = GammaSet::dirac());

/// psi^dagger gamma^0
RowSpinor dirac_adjoint(const Spinor &psi, const GammaSet &g = GammaSet::dirac());

/// (n^mu - gamma.n gamma^mu) p_mu for covariant p: the derivative kernel contracted with a vector.
Matrix4 dirac_derivative_kernel(const SpaceVector &p_lower, const Foliation &fol,
                                const GammaSet &g = GammaSet::dirac());

/// pi [(n^mu - gamma.n gamma^mu) d_mu - i m gamma.n] psi for psi ~ u exp(-i p.x), so d_mu -> -i p_mu.
cplx dirac_hamiltonian_density(const Spinor &psi, const RowSpinor &pi, const Foliation &fol, double mass,
                               const SpaceVector &p, const GammaSet &g = GammaSet::dirac());

/// (gamma.p + m) e_branch scaled to u_bar u = 2m; branch 0 or 1.
Spinor dirac_spinor_u(const SpaceVector &p, double mass, std::size_t branch, const GammaSet &g = GammaSet::dirac());

struct DiracResidual {
    double residual = 0.0;
    /// |p.p - m^2| beyond round-off
    bool off_shell = false;
};
/// |n.d psi - dH/dpi| for psi = u(p) exp(-i p.x), evaluated from the Hamiltonian kernel.
DiracResidual dirac_residual(const SpaceVector &p, double mass, std::size_t branch, const Foliation &fol,
                             const GammaSet &g = GammaSet::dirac());

/// Spinor representation of Lambda = exp(omega) with omega_{mu nu} lower-index antisymmetric.
class SpinorBoost {
   public:
    explicit SpinorBoost(const Eigen::Matrix4d &omega_lower, const GammaSet &g = GammaSet::dirac());

    const Matrix4 &spinor() const {
        return s_;
    }
    const BoostMatrix &vector() const {
        return lambda_;
    }
    Matrix4 inverse() const;

   private:
    Matrix4 s_;
    BoostMatrix lambda_;
};

struct SpinorBoostReport {
    /// max over mu of |S^{-1} gamma^mu S - Lambda^mu_nu gamma^nu|
    double intertwiner_residual = 0.0;
    /// |S^dagger S - I|
    double unitarity_defect = 0.0;
    double clifford_residual = 0.0;
    /// |gamma^0 S^dagger gamma^0 - S^{-1}|
    double adjoint_residual = 0.0;
};
SpinorBoostReport spinor_boost_checks(const Eigen::Matrix4d &omega_lower, const GammaSet &g = GammaSet::dirac());

}  // namespace xtqm

#endif
