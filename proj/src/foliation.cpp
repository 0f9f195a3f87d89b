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

#include "xtqm/foliation.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "xtqm/errors.hpp"

namespace xtqm {

Eigen::MatrixXd minkowski_metric(std::size_t dim) {
    Eigen::MatrixXd eta = -Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    eta(0, 0) = 1.0;
    return eta;
}

double mdot(const SpaceVector &a, const SpaceVector &b) {
    if (a.size() != b.size() || a.size() < 1) {
        throw InvalidArgument("mdot: dimension mismatch");
    }
    return a(0) * b(0) - a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

namespace {

Eigen::MatrixXd rest_boost(const SpaceVector &n, double norm) {
    const auto dim = n.size();
    const SpaceVector unit = n / norm;
    const double gamma = unit(0);
    const Eigen::VectorXd u = unit.tail(dim - 1);
    Eigen::MatrixXd lambda(dim, dim);
    lambda(0, 0) = gamma;
    lambda.block(0, 1, 1, dim - 1) = u.transpose();
    lambda.block(1, 0, dim - 1, 1) = u;
    lambda.block(1, 1, dim - 1, dim - 1) =
        Eigen::MatrixXd::Identity(dim - 1, dim - 1) + u * u.transpose() / (1.0 + gamma);
    return lambda;
}

}  // namespace

Foliation::Foliation(SpaceVector n) : n_(std::move(n)), norm_(0.0) {
    if (n_.size() < 2) {
        throw InvalidArgument("foliation: need at least 1+1 dimensions");
    }
    if (!n_.allFinite()) {
        throw InvalidArgument("foliation: non-finite components");
    }
    const double nn = mdot(n_, n_);
    if (!(nn > 0.0)) {
        throw InvalidArgument("foliation: n is not timelike (n.n = " + std::to_string(nn) + ")");
    }
    if (!(n_(0) > 0.0)) {
        throw InvalidArgument("foliation: n must be future-pointing");
    }
    norm_ = std::sqrt(nn);
    const Eigen::MatrixXd lambda = rest_boost(n_, norm_);
    for (Eigen::Index i = 1; i < n_.size(); ++i) {
        frame_.emplace_back(norm_ * lambda.col(i));
    }
}

Foliation Foliation::from_rapidity(std::size_t dim, double rapidity, double norm) {
    if (dim < 2) {
        throw InvalidArgument("foliation: need at least 1+1 dimensions");
    }
    SpaceVector n = SpaceVector::Zero(static_cast<Eigen::Index>(dim));
    n(0) = norm * std::cosh(rapidity);
    n(1) = norm * std::sinh(rapidity);
    return Foliation(std::move(n));
}

Foliation Foliation::canonical(std::size_t dim) {
    return from_rapidity(dim, 0.0);
}

double Foliation::frame_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < frame_.size(); ++i) {
        worst = std::max(worst, std::abs(mdot(frame_[i], n_)));
        for (std::size_t j = 0; j < frame_.size(); ++j) {
            const double target = i == j ? -norm2() : 0.0;
            worst = std::max(worst, std::abs(mdot(frame_[i], frame_[j]) - target));
        }
    }
    return worst;
}

double Foliation::resolution_residual() const {
    Eigen::MatrixXd m = n_ * n_.transpose();
    for (const auto &ni : frame_) {
        m -= ni * ni.transpose();
    }
    m -= norm2() * minkowski_metric(dim());
    return m.cwiseAbs().maxCoeff();
}

Foliation Foliation::scaled(double s) const {
    if (!(s > 0.0)) {
        throw InvalidArgument("foliation: scale must be positive");
    }
    return Foliation(s * n_);
}

BoostMatrix::BoostMatrix(Eigen::MatrixXd lambda, std::vector<double> rapidities)
    : lambda_(std::move(lambda)), rapidities_(std::move(rapidities)) {
    if (lambda_.rows() != lambda_.cols() || lambda_.rows() < 2) {
        throw InvalidArgument("boost: matrix must be square with dimension >= 2");
    }
    if (!lambda_.allFinite()) {
        throw InvalidArgument("boost: non-finite entries");
    }
    const double scale = std::max(1.0, lambda_.squaredNorm());
    if (metric_residual() > 1e-10 * scale) {
        throw InvalidArgument("boost: matrix does not preserve the metric");
    }
    if (lambda_(0, 0) < 0.0 || lambda_.determinant() < 0.0) {
        throw InvalidArgument("boost: matrix is not proper orthochronous");
    }
}

BoostMatrix BoostMatrix::boost(std::size_t dim, std::size_t axis, double rapidity) {
    if (axis < 1 || axis >= dim) {
        throw InvalidArgument("boost: axis out of range");
    }
    const auto a = static_cast<Eigen::Index>(axis);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(0, 0) = std::cosh(rapidity);
    m(a, a) = std::cosh(rapidity);
    m(0, a) = std::sinh(rapidity);
    m(a, 0) = std::sinh(rapidity);
    std::vector<double> r(dim - 1, 0.0);
    r[axis - 1] = rapidity;
    return BoostMatrix(std::move(m), std::move(r));
}

BoostMatrix BoostMatrix::rotation(std::size_t dim, std::size_t i, std::size_t j, double angle) {
    if (i < 1 || j < 1 || i >= dim || j >= dim || i == j) {
        throw InvalidArgument("rotation: plane indices out of range");
    }
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(j);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(a, a) = std::cos(angle);
    m(b, b) = std::cos(angle);
    m(a, b) = -std::sin(angle);
    m(b, a) = std::sin(angle);
    return BoostMatrix(std::move(m), std::vector<double>(dim - 1, 0.0));
}

BoostMatrix BoostMatrix::from_generator(const Eigen::MatrixXd &omega_lower) {
    if (omega_lower.rows() != omega_lower.cols() || omega_lower.rows() < 2) {
        throw InvalidArgument("boost: generator must be square");
    }
    if ((omega_lower + omega_lower.transpose()).cwiseAbs().maxCoeff() > 1e-14 * (1.0 + omega_lower.norm())) {
        throw InvalidArgument("boost: generator must be antisymmetric");
    }
    const auto dim = static_cast<std::size_t>(omega_lower.rows());
    const Eigen::MatrixXd k = minkowski_metric(dim) * omega_lower;
    std::vector<double> r(dim - 1);
    for (std::size_t i = 1; i < dim; ++i) {
        r[i - 1] = omega_lower(0, static_cast<Eigen::Index>(i));
    }
    return BoostMatrix(k.exp(), std::move(r));
}

BoostMatrix BoostMatrix::taking_rest_to(const Foliation &fol) {
    std::vector<double> r;
    const double gamma = fol.n()(0) / fol.norm();
    const double total = std::acosh(std::max(1.0, gamma));
    const Eigen::VectorXd u = fol.n().tail(fol.n().size() - 1);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        r.push_back(u.norm() > 0.0 ? total * u(i) / u.norm() : 0.0);
    }
    return BoostMatrix(rest_boost(fol.n(), fol.norm()), std::move(r));
}

BoostMatrix BoostMatrix::identity(std::size_t dim) {
    return BoostMatrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)),
                       std::vector<double>(dim - 1, 0.0));
}

Foliation BoostMatrix::apply(const Foliation &fol) const {
    if (fol.dim() != dim()) {
        throw InvalidArgument("boost: foliation dimension mismatch");
    }
    return Foliation(lambda_ * fol.n());
}

BoostMatrix BoostMatrix::inverse() const {
    // Lambda^{-1} = eta Lambda^T eta
    const Eigen::MatrixXd eta = minkowski_metric(dim());
    std::vector<double> r = rapidities_;
    for (double &x : r) {
        x = -x;
    }
    return BoostMatrix(eta * lambda_.transpose() * eta, std::move(r));
}

BoostMatrix BoostMatrix::operator*(const BoostMatrix &other) const {
    if (other.dim() != dim()) {
        throw InvalidArgument("boost: dimension mismatch in composition");
    }
    return BoostMatrix(lambda_ * other.lambda_);
}

double BoostMatrix::metric_residual() const {
    const Eigen::MatrixXd eta = minkowski_metric(dim());
    return (lambda_.transpose() * eta * lambda_ - eta).cwiseAbs().maxCoeff();
}

}  // namespace xtqm
