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

#include "xtqm/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "xtqm/errors.hpp"
#include "xtqm/numeric_policy.hpp"

namespace xtqm {

namespace {

void check_shape(const Shape &shape) {
    if (shape.empty()) {
        throw InvalidArgument("shape must list at least one factor");
    }
    for (std::size_t d : shape) {
        if (d == 0) {
            throw InvalidArgument("factor dimensions must be >= 1");
        }
    }
}

std::size_t checked_product(const Shape &shape) {
    std::size_t total = 1;
    for (std::size_t d : shape) {
        if (total > std::numeric_limits<std::size_t>::max() / d) {
            throw ResourceError("dimension product overflows");
        }
        total *= d;
    }
    return total;
}

void check_cap(std::size_t side) {
    if (side > policy().dimension_cap) {
        throw ResourceError(
            "dimension " + std::to_string(side) + " exceeds cap " + std::to_string(policy().dimension_cap));
    }
}

Shape concat(const Shape &a, const Shape &b) {
    Shape out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

bool all_finite(const Matrix &m) {
    return m.allFinite();
}

}  // namespace

std::size_t shape_size(const Shape &shape) {
    return checked_product(shape);
}

Operator::Operator(Matrix data, Shape shape) : data_(std::move(data)), shape_(std::move(shape)) {
    check_shape(shape_);
    if (data_.rows() != data_.cols()) {
        throw InvalidArgument("operator matrix must be square");
    }
    if (checked_product(shape_) != static_cast<std::size_t>(data_.rows())) {
        throw InvalidArgument("shape product does not match matrix side");
    }
}

Operator::Operator(Matrix data) : Operator(data, Shape{static_cast<std::size_t>(data.rows())}) {
}

Operator Operator::identity(const Shape &shape) {
    auto n = static_cast<Eigen::Index>(checked_product(shape));
    return Operator(Matrix::Identity(n, n), shape);
}

Operator Operator::zero(const Shape &shape) {
    auto n = static_cast<Eigen::Index>(checked_product(shape));
    return Operator(Matrix::Zero(n, n), shape);
}

Operator Operator::adjoint() const {
    return Operator(data_.adjoint(), shape_);
}

bool Operator::is_hermitian(double tol) const {
    return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
    Matrix g = data_.adjoint() * data_;
    g -= Matrix::Identity(data_.rows(), data_.cols());
    return g.cwiseAbs().maxCoeff() <= tol;
}

Operator &Operator::operator+=(const Operator &other) {
    if (other.side() != side()) {
        throw InvalidArgument("operator sum: side mismatch");
    }
    data_ += other.data_;
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    if (other.side() != side()) {
        throw InvalidArgument("operator difference: side mismatch");
    }
    data_ -= other.data_;
    return *this;
}

Operator &Operator::operator*=(cplx scale) {
    data_ *= scale;
    return *this;
}

Operator operator*(const Operator &a, const Operator &b) {
    if (a.side() != b.side()) {
        throw InvalidArgument("operator product: side mismatch");
    }
    return Operator(a.data_ * b.data_, a.shape_);
}

double max_abs_diff(const Operator &a, const Operator &b) {
    if (a.side() != b.side()) {
        throw InvalidArgument("max_abs_diff: side mismatch");
    }
    if (a.side() == 0) {
        return 0.0;
    }
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

StateVector::StateVector(Vector data, Shape shape) : data_(std::move(data)), shape_(std::move(shape)) {
    check_shape(shape_);
    if (checked_product(shape_) != static_cast<std::size_t>(data_.size())) {
        throw InvalidArgument("shape product does not match vector length");
    }
}

StateVector::StateVector(Vector data) : StateVector(data, Shape{static_cast<std::size_t>(data.size())}) {
}

StateVector StateVector::basis(const Shape &shape, std::size_t index) {
    auto n = checked_product(shape);
    if (index >= n) {
        throw InvalidArgument("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v), shape);
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.size() != size()) {
        throw InvalidArgument("inner product: length mismatch");
    }
    return data_.dot(other.data_);
}

Operator StateVector::projector() const {
    return Operator(data_ * data_.adjoint(), shape_);
}

GeneralizedState::GeneralizedState(StateVector ket, StateVector bra) : ket_(std::move(ket)), bra_(std::move(bra)) {
    if (ket_.shape() != bra_.shape()) {
        throw InvalidArgument("generalized state: ket and bra shapes differ");
    }
    overlap_ = bra_.inner(ket_);
    double scale = ket_.norm() * bra_.norm();
    if (!(std::abs(overlap_) > policy().overlap * scale)) {
        throw DegenerateNormalization("generalized state: overlap <<Phi|Psi>> vanishes");
    }
}

Operator GeneralizedState::density() const {
    return Operator(ket_.vector() * bra_.vector().adjoint() / overlap_, ket_.shape());
}

Operator tensor_product(const Operator &a, const Operator &b) {
    Shape shape = concat(a.shape(), b.shape());
    std::size_t side = checked_product(shape);
    check_cap(side);
    auto na = static_cast<Eigen::Index>(a.side());
    auto nb = static_cast<Eigen::Index>(b.side());
    Matrix out(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return Operator(std::move(out), std::move(shape));
}

Operator tensor_product(const std::vector<Operator> &factors) {
    if (factors.empty()) {
        throw InvalidArgument("tensor_product needs at least one factor");
    }
    Operator acc = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        acc = tensor_product(acc, factors[k]);
    }
    return acc;
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    Shape shape = concat(a.shape(), b.shape());
    check_cap(checked_product(shape));
    auto nb = static_cast<Eigen::Index>(b.size());
    Vector out(static_cast<Eigen::Index>(a.size()) * nb);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.size()); ++i) {
        out.segment(i * nb, nb) = a.vector()(i) * b.vector();
    }
    return StateVector(std::move(out), std::move(shape));
}

Operator partial_trace(const Operator &op, const std::vector<std::size_t> &keep) {
    const Shape &shape = op.shape();
    const std::size_t m = shape.size();
    std::vector<bool> kept(m, false);
    for (std::size_t k : keep) {
        if (k >= m) {
            throw InvalidArgument("partial_trace: factor index out of range");
        }
        kept[k] = true;
    }
    if (keep.empty()) {
        Matrix t(1, 1);
        t(0, 0) = op.trace();
        return Operator(std::move(t), Shape{1});
    }

    // Row-major strides of the full index.
    std::vector<std::size_t> stride(m, 1);
    for (std::size_t k = m - 1; k > 0; --k) {
        stride[k - 1] = stride[k] * shape[k];
    }
    Shape kept_shape;
    Shape traced_shape;
    std::vector<std::size_t> kept_stride;
    std::vector<std::size_t> traced_stride;
    for (std::size_t k = 0; k < m; ++k) {
        if (kept[k]) {
            kept_shape.push_back(shape[k]);
            kept_stride.push_back(stride[k]);
        } else {
            traced_shape.push_back(shape[k]);
            traced_stride.push_back(stride[k]);
        }
    }

    auto offsets = [](const Shape &dims, const std::vector<std::size_t> &strides) {
        std::size_t n = 1;
        for (std::size_t d : dims) {
            n *= d;
        }
        std::vector<std::size_t> out(n, 0);
        for (std::size_t flat = 0; flat < n; ++flat) {
            std::size_t rem = flat;
            std::size_t off = 0;
            for (std::size_t k = dims.size(); k-- > 0;) {
                off += (rem % dims[k]) * strides[k];
                rem /= dims[k];
            }
            out[flat] = off;
        }
        return out;
    };
    std::vector<std::size_t> kept_off = offsets(kept_shape, kept_stride);
    std::vector<std::size_t> traced_off = traced_shape.empty() ? std::vector<std::size_t>{0}
                                                               : offsets(traced_shape, traced_stride);

    auto nk = static_cast<Eigen::Index>(kept_off.size());
    Matrix out = Matrix::Zero(nk, nk);
    const Matrix &a = op.matrix();
    for (Eigen::Index r = 0; r < nk; ++r) {
        for (Eigen::Index c = 0; c < nk; ++c) {
            cplx acc = 0.0;
            for (std::size_t t : traced_off) {
                acc += a(static_cast<Eigen::Index>(kept_off[r] + t), static_cast<Eigen::Index>(kept_off[c] + t));
            }
            out(r, c) = acc;
        }
    }
    return Operator(std::move(out), std::move(kept_shape));
}

Operator matrix_exp(const Operator &op, cplx scale) {
    if (!all_finite(op.matrix()) || !std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw NumericError("matrix_exp: non-finite input");
    }
    const auto n = static_cast<Eigen::Index>(op.side());
    if (scale == cplx(0.0, 0.0)) {
        return Operator::identity(op.shape());
    }
    const Matrix &a = op.matrix();
    double size = std::max(1.0, a.cwiseAbs().maxCoeff());

    if (op.is_hermitian(policy().normality * size)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a);
        Vector w = (scale * es.eigenvalues().cast<cplx>().array()).exp().matrix();
        Matrix out = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
        return Operator(std::move(out), op.shape());
    }
    Matrix comm = a * a.adjoint() - a.adjoint() * a;
    if (comm.cwiseAbs().maxCoeff() <= policy().normality * size * size) {
        // Normal: the Schur form is diagonal up to roundoff.
        Eigen::ComplexSchur<Matrix> schur(a);
        const Matrix &t = schur.matrixT();
        Vector w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            w(i) = std::exp(scale * t(i, i));
        }
        Matrix out = schur.matrixU() * w.asDiagonal() * schur.matrixU().adjoint();
        return Operator(std::move(out), op.shape());
    }
    Matrix scaled = scale * a;
    Matrix out = scaled.exp();
    if (!out.allFinite()) {
        throw NumericError("matrix_exp: overflow");
    }
    return Operator(std::move(out), op.shape());
}

Spectrum eig_spectrum(const Operator &op, bool with_vectors) {
    const Matrix &a = op.matrix();
    if (!a.allFinite()) {
        throw NumericError("eig_spectrum: non-finite input");
    }
    const auto n = static_cast<Eigen::Index>(op.side());
    std::vector<cplx> values(static_cast<std::size_t>(n));
    Matrix vectors;
    double size = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (op.is_hermitian(policy().normality * size)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < n; ++i) {
            values[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        }
        if (with_vectors) {
            vectors = es.eigenvectors();
        }
    } else {
        Eigen::ComplexEigenSolver<Matrix> es(a, with_vectors);
        for (Eigen::Index i = 0; i < n; ++i) {
            values[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        }
        if (with_vectors) {
            vectors = es.eigenvectors();
        }
    }

    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (values[i].real() != values[j].real()) {
            return values[i].real() > values[j].real();
        }
        return values[i].imag() > values[j].imag();
    });

    Spectrum out;
    out.values.reserve(values.size());
    for (std::size_t i : order) {
        out.values.push_back(values[i]);
    }
    if (with_vectors) {
        Matrix sorted(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            sorted.col(c) = vectors.col(static_cast<Eigen::Index>(order[static_cast<std::size_t>(c)]));
        }
        out.vectors = std::move(sorted);
    }
    return out;
}

namespace pauli {

Operator identity() {
    return Operator(Matrix::Identity(2, 2));
}

Operator x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return Operator(m);
}

Operator y() {
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return Operator(m);
}

Operator z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return Operator(m);
}

Operator by_index(int index) {
    switch (index) {
        case 0:
            return identity();
        case 1:
            return x();
        case 2:
            return y();
        case 3:
            return z();
        default:
            throw InvalidArgument("pauli index must be 0..3");
    }
}

}  // namespace pauli

}  // namespace xtqm
