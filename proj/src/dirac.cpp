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

#include "xtqm/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "xtqm/errors.hpp"

namespace xtqm {

namespace {

const cplx kI(0.0, 1.0);

void require_four(const SpaceVector &v, const char *what) {
    if (v.size() != 4) {
        throw InvalidArgument(std::string(what) + ": Dirac fields live in 3+1 dimensions");
    }
}

SpaceVector lower(const SpaceVector &v) {
    SpaceVector out = -v;
    out(0) = v(0);
    return out;
}

}  // namespace

GammaSet::GammaSet(std::array<Matrix4, 4> gammas) : gammas_(std::move(gammas)) {
}

GammaSet GammaSet::dirac() {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    std::array<Eigen::Matrix2cd, 3> sigma;
    sigma[0] << 0, 1, 1, 0;
    sigma[1] << 0, -kI, kI, 0;
    sigma[2] << 1, 0, 0, -1;
    std::array<Matrix4, 4> g;
    g[0].setZero();
    g[0].topLeftCorner<2, 2>() = id;
    g[0].bottomRightCorner<2, 2>() = -id;
    for (std::size_t i = 0; i < 3; ++i) {
        g[i + 1].setZero();
        g[i + 1].topRightCorner<2, 2>() = sigma[i];
        g[i + 1].bottomLeftCorner<2, 2>() = -sigma[i];
    }
    return GammaSet(g);
}

GammaSet GammaSet::similarity(const Matrix4 &m) const {
    const Matrix4 inv = m.inverse();
    std::array<Matrix4, 4> g;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        g[mu] = inv * gammas_[mu] * m;
    }
    return GammaSet(g);
}

double GammaSet::clifford_residual() const {
    double worst = 0.0;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = mu; nu < 4; ++nu) {
            Matrix4 target = Matrix4::Zero();
            if (mu == nu) {
                target = (mu == 0 ? 2.0 : -2.0) * Matrix4::Identity();
            }
            const Matrix4 anti = gammas_[mu] * gammas_[nu] + gammas_[nu] * gammas_[mu];
            worst = std::max(worst, (anti - target).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

Matrix4 GammaSet::slash(const SpaceVector &v) const {
    require_four(v, "slash");
    Matrix4 out = gammas_[0] * v(0);
    for (std::size_t i = 1; i < 4; ++i) {
        out -= gammas_[i] * v(static_cast<Eigen::Index>(i));
    }
    return out;
}

Matrix4 GammaSet::commutator(std::size_t mu, std::size_t nu) const {
    return gammas_.at(mu) * gammas_.at(nu) - gammas_.at(nu) * gammas_.at(mu);
}

Matrix4 gamma_prime0(const Foliation &fol, const GammaSet &g) {
    if (std::abs(fol.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("gamma_prime0: needs ||n|| = 1");
    }
    return g.slash(fol.n());
}

RowSpinor dirac_momentum(const RowSpinor &psi_bar, const Foliation &fol, const GammaSet &g) {
    return kI * psi_bar * g.slash(fol.n()) / fol.norm2();
}

RowSpinor dirac_bar_from_momentum(const RowSpinor &pi, const Foliation &fol, const GammaSet &g) {
    return -kI * pi * g.slash(fol.n());
}

RowSpinor dirac_adjoint(const Spinor &psi, const GammaSet &g) {
    return psi.adjoint() * g[0];
}

Matrix4 dirac_derivative_kernel(const SpaceVector &p_lower, const Foliation &fol, const GammaSet &g) {
    require_four(p_lower, "dirac_derivative_kernel");
    const Matrix4 gn = g.slash(fol.n());
    Matrix4 out = fol.n().dot(p_lower) * Matrix4::Identity();
    for (std::size_t mu = 0; mu < 4; ++mu) {
        out -= gn * g[mu] * p_lower(static_cast<Eigen::Index>(mu));
    }
    return out;
}

cplx dirac_hamiltonian_density(const Spinor &psi, const RowSpinor &pi, const Foliation &fol, double mass,
                               const SpaceVector &p, const GammaSet &g) {
    require_four(p, "dirac_hamiltonian_density");
    const Matrix4 op = -kI * dirac_derivative_kernel(lower(p), fol, g) - kI * mass * g.slash(fol.n());
    return (pi * op * psi)(0, 0);
}

Spinor dirac_spinor_u(const SpaceVector &p, double mass, std::size_t branch, const GammaSet &g) {
    require_four(p, "dirac_spinor_u");
    if (branch > 1) {
        throw InvalidArgument("dirac_spinor_u: branch must be 0 or 1");
    }
    if (!(mass > 0.0)) {
        throw InvalidArgument("dirac_spinor_u: needs m > 0");
    }
    Spinor e = Spinor::Zero();
    e(static_cast<Eigen::Index>(branch)) = 1.0;
    Spinor u = (g.slash(p) + mass * Matrix4::Identity()) * e;
    const double ubar_u = (dirac_adjoint(u, g) * u)(0, 0).real();
    if (!(ubar_u > 0.0)) {
        throw NumericError("dirac_spinor_u: u_bar u is not positive");
    }
    return u * std::sqrt(2.0 * mass / ubar_u);
}

DiracResidual dirac_residual(const SpaceVector &p, double mass, std::size_t branch, const Foliation &fol,
                             const GammaSet &g) {
    const Spinor u = dirac_spinor_u(p, mass, branch, g);
    const SpaceVector pl = lower(p);
    // n.d psi = -i (n.p) psi; dH/dpi = [-i K(p) - i m gamma.n] psi
    const Spinor along_n = -kI * fol.n().dot(pl) * u;
    const Spinor rhs = (-kI * dirac_derivative_kernel(pl, fol, g) - kI * mass * g.slash(fol.n())) * u;
    DiracResidual out;
    out.residual = (along_n - rhs).norm();
    const double shell = mdot(p, p) - mass * mass;
    out.off_shell = std::abs(shell) > 1e-12 * std::max(1.0, p.squaredNorm());
    return out;
}

SpinorBoost::SpinorBoost(const Eigen::Matrix4d &omega_lower, const GammaSet &g)
    : lambda_(BoostMatrix::from_generator(omega_lower)) {
    Matrix4 gen = Matrix4::Zero();
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = 0; nu < 4; ++nu) {
            gen += omega_lower(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) * g.commutator(mu, nu);
        }
    }
    // exp(-i omega sigma / 4) with sigma^{mu nu} = (i/2)[gamma^mu, gamma^nu]
    s_ = (gen / 8.0).exp();
}

Matrix4 SpinorBoost::inverse() const {
    return s_.inverse();
}

SpinorBoostReport spinor_boost_checks(const Eigen::Matrix4d &omega_lower, const GammaSet &g) {
    const SpinorBoost boost(omega_lower, g);
    const Matrix4 &s = boost.spinor();
    const Matrix4 inv = boost.inverse();
    const Eigen::MatrixXd &lambda = boost.vector().matrix();
    SpinorBoostReport out;
    std::array<Matrix4, 4> moved;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        Matrix4 target = Matrix4::Zero();
        for (std::size_t nu = 0; nu < 4; ++nu) {
            target += lambda(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) * g[nu];
        }
        moved[mu] = inv * g[mu] * s;
        out.intertwiner_residual = std::max(out.intertwiner_residual, (moved[mu] - target).cwiseAbs().maxCoeff());
    }
    out.unitarity_defect = (s.adjoint() * s - Matrix4::Identity()).cwiseAbs().maxCoeff();
    out.clifford_residual = GammaSet(moved).clifford_residual();
    out.adjoint_residual = (g[0] * s.adjoint() * g[0] - inv).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace xtqm
