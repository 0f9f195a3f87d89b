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

#ifndef XTQM_OPERATOR_HPP
#define XTQM_OPERATOR_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace xtqm {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dimensions of the tensor factors, most significant first.
using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape &shape);

/// Dense square matrix on a factorized space.
class Operator {
   public:
    Operator(Matrix data, Shape shape);
    /// Single-factor operator; shape is {side}.
    explicit Operator(Matrix data);

    static Operator identity(const Shape &shape);
    static Operator zero(const Shape &shape);

    const Matrix &matrix() const {
        return data_;
    }
    const Shape &shape() const {
        return shape_;
    }
    std::size_t side() const {
        return static_cast<std::size_t>(data_.rows());
    }
    std::size_t factor_count() const {
        return shape_.size();
    }
    cplx operator()(std::size_t row, std::size_t col) const {
        return data_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    cplx trace() const {
        return data_.trace();
    }
    Operator adjoint() const;
    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(cplx scale);

    friend Operator operator*(const Operator &a, const Operator &b);
    friend Operator operator+(Operator a, const Operator &b) {
        return a += b;
    }
    friend Operator operator-(Operator a, const Operator &b) {
        return a -= b;
    }
    friend Operator operator*(cplx s, Operator a) {
        return a *= s;
    }

   private:
    Matrix data_;
    Shape shape_;
};

/// Largest absolute entry of a - b; shapes must agree.
double max_abs_diff(const Operator &a, const Operator &b);

class StateVector {
   public:
    StateVector(Vector data, Shape shape);
    explicit StateVector(Vector data);

    /// Computational basis vector |index> in the given shape.
    static StateVector basis(const Shape &shape, std::size_t index);

    const Vector &vector() const {
        return data_;
    }
    const Shape &shape() const {
        return shape_;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(data_.size());
    }
    double norm() const {
        return data_.norm();
    }
    /// <this|other>
    cplx inner(const StateVector &other) const;
    /// |this><this|
    Operator projector() const;

   private:
    Vector data_;
    Shape shape_;
};

/// Pair (|Psi>>, <<Phi|) of unnormalized vectors with a cached overlap <<Phi|Psi>>.
/// Represents R = |Psi>><<Phi| / <<Phi|Psi>>.
class GeneralizedState {
   public:
    GeneralizedState(StateVector ket, StateVector bra);

    const StateVector &ket() const {
        return ket_;
    }
    const StateVector &bra() const {
        return bra_;
    }
    cplx overlap() const {
        return overlap_;
    }
    const Shape &shape() const {
        return ket_.shape();
    }
    /// Induced trace-one rank-one operator R.
    Operator density() const;

   private:
    StateVector ket_;
    StateVector bra_;
    cplx overlap_;
};

Operator tensor_product(const Operator &a, const Operator &b);
Operator tensor_product(const std::vector<Operator> &factors);
StateVector tensor_product(const StateVector &a, const StateVector &b);

/// Traces out every factor whose index is not in `keep`. Kept factors retain their order.
/// An empty keep set returns the 1x1 operator holding the full trace.
Operator partial_trace(const Operator &op, const std::vector<std::size_t> &keep);

/// exp(scale * op).
Operator matrix_exp(const Operator &op, cplx scale);

struct Spectrum {
    std::vector<cplx> values;
    /// Columns follow the order of `values`; only filled on request.
    std::optional<Matrix> vectors;
};

/// Eigenvalues sorted by descending real part, ties broken by descending imaginary part.
Spectrum eig_spectrum(const Operator &op, bool with_vectors = false);

namespace pauli {
Operator identity();
Operator x();
Operator y();
Operator z();
/// index 0..3 -> I, X, Y, Z
Operator by_index(int index);
}  // namespace pauli

}  // namespace xtqm

#endif
