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

#ifndef XTQM_POISSON_HPP
#define XTQM_POISSON_HPP

#include <cstddef>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "xtqm/classical_lattice.hpp"

namespace xtqm {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// F(z) = z^T A z / 2 + b^T z + c on extended phase space z = (phi over all sites, pi over all
/// sites), sites ordered row by row. A is stored symmetrized.
class QuadraticFunctional {
   public:
    QuadraticFunctional(LatticeGeometry geometry, SparseMatrix a, Eigen::VectorXd b, double c = 0.0);

    static QuadraticFunctional phi_at(const LatticeGeometry &g, std::size_t i, std::size_t j);
    static QuadraticFunctional pi_at(const LatticeGeometry &g, std::size_t i, std::size_t j);
    static QuadraticFunctional zero(const LatticeGeometry &g);

    double evaluate(const Eigen::VectorXd &z) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd &z) const;

    const LatticeGeometry &geometry() const {
        return geometry_;
    }
    const SparseMatrix &quadratic() const {
        return a_;
    }
    const Eigen::VectorXd &linear() const {
        return b_;
    }
    double constant() const {
        return c_;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(b_.size());
    }

    QuadraticFunctional operator+(const QuadraticFunctional &o) const;
    QuadraticFunctional operator-(const QuadraticFunctional &o) const;
    QuadraticFunctional operator*(double s) const;

    /// Largest absolute coefficient over A, b and c.
    double coefficient_norm() const;

   private:
    LatticeGeometry geometry_;
    SparseMatrix a_;
    Eigen::VectorXd b_;
    double c_;
};

/// Stacks (phi, pi) of a field into z.
Eigen::VectorXd phase_point(const LatticeField &field);

/// {phi_s, pi_r} = delta_sr / (dt dx), every other pair zero.
SparseMatrix symplectic_form(const LatticeGeometry &g);

/// {F, G} = grad F^T Omega grad G, again quadratic.
QuadraticFunctional extended_pb(const QuadraticFunctional &f, const QuadraticFunctional &g);

/// dt dx sum_s pi_s (n.D phi)_s with central differences; rows without a time stencil are left out.
QuadraticFunctional p0_generator(const LatticeGeometry &g, const Foliation &fol);

/// dt dx sum_s pi_s ((t d_x + x d_t) phi)_s, the boost generator acting on fields alone.
QuadraticFunctional boost_generator(const LatticeGeometry &g);

/// dt dx sum_s [pi n.D phi - ||n||^2 pi^2/2 - (1/2)(n n/||n||^2 - eta) D phi D phi - m^2 phi^2 / 2].
QuadraticFunctional free_action(const LatticeGeometry &g, const Foliation &fol, double mass);

/// d/d eta of free_action at n(eta) = exp(-eta K) n, K the boost generator of the (t, x) plane,
/// by central difference with step h. Adding it to {S, L} gives the full boost variation.
QuadraticFunctional action_foliation_derivative(const LatticeGeometry &g, const Foliation &fol, double mass,
                                                double h = 1e-4);

}  // namespace xtqm

#endif
