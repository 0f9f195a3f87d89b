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

#ifndef XTQM_FOLIATION_HPP
#define XTQM_FOLIATION_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace xtqm {

/// Contravariant spacetime vector, signature (+,-,...,-).
using SpaceVector = Eigen::VectorXd;

/// diag(1, -1, ..., -1)
Eigen::MatrixXd minkowski_metric(std::size_t dim);

/// a^0 b^0 - sum_i a^i b^i
double mdot(const SpaceVector &a, const SpaceVector &b);

/// Timelike, future-pointing n^mu with its derived spatial frame.
class Foliation {
   public:
    explicit Foliation(SpaceVector n);
    /// n = (cosh eta, sinh eta, 0, ...) scaled by `norm`.
    static Foliation from_rapidity(std::size_t dim, double rapidity, double norm = 1.0);
    static Foliation canonical(std::size_t dim);

    const SpaceVector &n() const {
        return n_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(n_.size());
    }
    /// sqrt(n.n)
    double norm() const {
        return norm_;
    }
    double norm2() const {
        return norm_ * norm_;
    }
    /// Spatial vectors n_i with n_i.n = 0, n_i.n_j = -||n||^2 delta_ij.
    const std::vector<SpaceVector> &frame() const {
        return frame_;
    }
    /// max |n_i.n|, |n_i.n_j + ||n||^2 delta_ij|
    double frame_residual() const;
    /// max |n^mu n^nu - sum_i n_i^mu n_i^nu - ||n||^2 eta^{mu nu}|
    double resolution_residual() const;

    Foliation scaled(double s) const;

   private:
    SpaceVector n_;
    double norm_;
    std::vector<SpaceVector> frame_;
};

/// Proper orthochronous Lorentz matrix Lambda^mu_nu.
class BoostMatrix {
   public:
    /// Validates Lambda^T eta Lambda = eta and det = 1.
    explicit BoostMatrix(Eigen::MatrixXd lambda, std::vector<double> rapidities = {});

    /// Pure boost along spatial axis `axis` (1-based).
    static BoostMatrix boost(std::size_t dim, std::size_t axis, double rapidity);
    /// Rotation in the (i, j) spatial plane, both 1-based.
    static BoostMatrix rotation(std::size_t dim, std::size_t i, std::size_t j, double angle);
    /// exp(omega^mu_nu) from lower-index antisymmetric omega_{mu nu}.
    static BoostMatrix from_generator(const Eigen::MatrixXd &omega_lower);
    /// Pure boost taking (norm, 0, ..., 0) to n.
    static BoostMatrix taking_rest_to(const Foliation &fol);
    static BoostMatrix identity(std::size_t dim);

    const Eigen::MatrixXd &matrix() const {
        return lambda_;
    }
    const std::vector<double> &rapidities() const {
        return rapidities_;
    }
    std::size_t dim() const {
        return static_cast<std::size_t>(lambda_.rows());
    }
    SpaceVector apply(const SpaceVector &v) const {
        return lambda_ * v;
    }
    Foliation apply(const Foliation &fol) const;
    BoostMatrix inverse() const;
    BoostMatrix operator*(const BoostMatrix &other) const;
    /// max |Lambda^T eta Lambda - eta|
    double metric_residual() const;

   private:
    Eigen::MatrixXd lambda_;
    std::vector<double> rapidities_;
};

}  // namespace xtqm

#endif
