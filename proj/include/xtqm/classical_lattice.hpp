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

#ifndef XTQM_CLASSICAL_LATTICE_HPP
#define XTQM_CLASSICAL_LATTICE_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "xtqm/foliation.hpp"

namespace xtqm {

/// Uniform 1+1 grid, periodic in x and open in t. Grid axes follow a unit timelike vector
/// `axes` and its spatial partner, so a lab-aligned grid uses axes = (1, 0).
class LatticeGeometry {
   public:
    LatticeGeometry(std::size_t nt, std::size_t nx, double dt, double dx, double t0 = 0.0, double x0 = 0.0);
    LatticeGeometry(std::size_t nt, std::size_t nx, double dt, double dx, double t0, double x0,
                    const Foliation &axes);

    std::size_t nt() const {
        return nt_;
    }
    std::size_t nx() const {
        return nx_;
    }
    std::size_t sites() const {
        return nt_ * nx_;
    }
    double dt() const {
        return dt_;
    }
    double dx() const {
        return dx_;
    }
    double t(std::size_t i) const {
        return t0_ + dt_ * static_cast<double>(i);
    }
    double x(std::size_t j) const {
        return x0_ + dx_ * static_cast<double>(j);
    }
    double t0() const {
        return t0_;
    }
    double x0() const {
        return x0_;
    }
    /// Period of the x axis.
    double length() const {
        return dx_ * static_cast<double>(nx_);
    }
    const SpaceVector &time_axis() const {
        return time_axis_;
    }
    const SpaceVector &space_axis() const {
        return space_axis_;
    }
    /// Lab coordinates of grid coordinates (t', x').
    SpaceVector lab_point(double t, double x) const;
    std::size_t site(std::size_t i, std::size_t j) const {
        return i * nx_ + j;
    }
    bool same_as(const LatticeGeometry &other) const;

   private:
    std::size_t nt_;
    std::size_t nx_;
    double dt_;
    double dx_;
    double t0_;
    double x0_;
    SpaceVector time_axis_;
    SpaceVector space_axis_;
};

/// phi and pi on every site; rows are time, columns space.
class LatticeField {
   public:
    LatticeField(LatticeGeometry geometry, Eigen::MatrixXd phi, Eigen::MatrixXd pi, double lambda_pot = 0.0);

    using Sampler = std::function<double(const SpaceVector &)>;
    /// Samples lab-frame functions at every grid point.
    static LatticeField sample(const LatticeGeometry &geometry, const Sampler &phi, const Sampler &pi,
                               double lambda_pot = 0.0);

    const LatticeGeometry &geometry() const {
        return geometry_;
    }
    const Eigen::MatrixXd &phi() const {
        return phi_;
    }
    const Eigen::MatrixXd &pi() const {
        return pi_;
    }
    double lambda_pot() const {
        return lambda_pot_;
    }

   private:
    LatticeGeometry geometry_;
    Eigen::MatrixXd phi_;
    Eigen::MatrixXd pi_;
    double lambda_pot_;
};

enum class StencilOrder { second, fourth };

/// Lower-index lab gradient (d_0 f, d_1 f) at grid point (i, j) from central differences.
Eigen::Vector2d lab_gradient(const Eigen::MatrixXd &f, const LatticeGeometry &g, std::size_t i, std::size_t j,
                             StencilOrder order = StencilOrder::second);

/// ||n||^2 pi^2/2 + (1/2)(n^mu n^nu/||n||^2 - eta^{mu nu}) d_mu phi d_nu phi + m^2 phi^2/2 + lambda phi^4/24.
double hamiltonian_density(const LatticeField &field, const Foliation &fol, double mass, std::size_t i,
                           std::size_t j, StencilOrder order = StencilOrder::second);

/// n_mu n_nu T^{mu nu} / ||n||^2 with T = d phi d phi - eta L, built from the Lagrangian alone.
double stress_energy_density(const LatticeField &field, const Foliation &fol, double mass, std::size_t i,
                             std::size_t j);

/// Right-hand sides on interior rows 1..nt-2 (result rows are shifted by one):
/// dpi = (n n/||n||^2 - eta) d d phi - m^2 phi - V'(phi), dphi = ||n||^2 pi.
struct HamiltonRhs {
    Eigen::MatrixXd dphi_along_n;
    Eigen::MatrixXd dpi_along_n;
};
HamiltonRhs hamilton_rhs(const LatticeField &field, const Foliation &fol, double mass);

/// n.d pi - dpi_along_n and n.d phi - dphi_along_n on interior rows.
struct ConstraintResidual {
    Eigen::MatrixXd pi_equation;
    Eigen::MatrixXd phi_equation;
    double max_abs() const;
};
ConstraintResidual physical_constraint_residual(const LatticeField &field, const Foliation &fol, double mass);

/// d_t'^2 phi - d_x'^2 phi + m^2 phi + V'(phi) in grid coordinates, interior rows.
Eigen::MatrixXd kg_residual(const LatticeField &field, double mass);

struct EvolutionOptions {
    std::size_t steps = 100;
    double dt = 0.05;
    double mass = 1.0;
    double lambda_pot = 0.0;
    /// Stability error when max |phi| or max |pi| exceeds this multiple of the initial maximum.
    double growth_limit = 100.0;
};

/// Kick-drift-kick leapfrog in the rest frame of n: d_t' phi = ||n|| pi,
/// d_t' pi = (d_x'^2 phi - m^2 phi - V'(phi)) / ||n||. The grid axes of the result follow n.
LatticeField evolve_along_n(const Eigen::VectorXd &phi0, const Eigen::VectorXd &pi0, double dx, const Foliation &fol,
                            const EvolutionOptions &options);

/// Discrete sum of the rest-frame density per time row.
std::vector<double> frame_energy(const LatticeField &field, const Foliation &fol, double mass);

struct ScalarCovarianceReport {
    double max_deviation = 0.0;
    std::size_t probes = 0;
};
/// Compares H at each probe x (fields phi, pi, foliation n) with H' at Lambda x built from
/// phi'(y) = phi(Lambda^{-1} y), pi'(y) = pi(Lambda^{-1} y) and n' = Lambda n. phi' is read off the
/// grid by 4x4 Lagrange interpolation and both sides use fourth-order differences.
/// An empty probe list means every grid point with a full stencil.
ScalarCovarianceReport scalar_covariance_check(const LatticeField &field, const BoostMatrix &boost,
                                               const Foliation &fol, double mass,
                                               const std::vector<std::pair<std::size_t, std::size_t>> &probes = {});

}  // namespace xtqm

#endif
