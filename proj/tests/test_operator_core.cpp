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

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "xtqm/errors.hpp"
#include "xtqm/numeric_policy.hpp"
#include "xtqm/random.hpp"

namespace xtqm {
namespace {

using testing::diff;

TEST(TensorProduct, IdentitiesGiveIdentity) {
    const Operator i4 = tensor_product(pauli::identity(), pauli::identity());
    EXPECT_EQ(i4.shape(), (Shape{2, 2}));
    EXPECT_EQ(diff(i4.matrix(), Matrix::Identity(4, 4)), 0.0);
}

TEST(TensorProduct, ZZIsDiagonal) {
    const Operator zz = tensor_product(pauli::z(), pauli::z());
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
    EXPECT_EQ(diff(zz.matrix(), expected), 0.0);
}

TEST(TensorProduct, ElementLayoutAndTrace) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const Operator a = random_matrix(rng, 2);
        const Operator b = random_matrix(rng, 3);
        const Operator ab = tensor_product(a, b);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t k = 0; k < 3; ++k) {
                    for (std::size_t l = 0; l < 3; ++l) {
                        EXPECT_EQ(ab(i * 3 + k, j * 3 + l), a(i, j) * b(k, l));
                    }
                }
            }
        }
        EXPECT_NEAR(std::abs(ab.trace() - a.trace() * b.trace()), 0.0, 1e-13);
    }
}

TEST(TensorProduct, Associative) {
    Rng rng(12);
    const Operator a = random_matrix(rng, 2);
    const Operator b = random_matrix(rng, 3);
    const Operator c = random_matrix(rng, 2);
    const Operator left = tensor_product(tensor_product(a, b), c);
    const Operator right = tensor_product(a, tensor_product(b, c));
    EXPECT_EQ(left.shape(), right.shape());
    EXPECT_LE(diff(left.matrix(), right.matrix()), 1e-14 * testing::max_abs(left.matrix()));
}

TEST(TensorProduct, DimensionCapIsEnforced) {
    const NumericPolicy saved = global_policy();
    global_policy().dimension_cap = 8;
    EXPECT_THROW(tensor_product({pauli::x(), pauli::x(), pauli::x(), pauli::x()}), ResourceError);
    global_policy() = saved;
}

TEST(PartialTrace, KeepFirstFactor) {
    Rng rng(13);
    const Operator a = random_matrix(rng, 3);
    const Operator b = random_matrix(rng, 2);
    const Operator r = partial_trace(tensor_product(a, b), {0});
    EXPECT_EQ(r.shape(), Shape{3});
    EXPECT_LE(diff(r.matrix(), a.matrix() * b.trace()), 1e-13);
}

TEST(PartialTrace, EmptyKeepReturnsTrace) {
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    const Operator r = partial_trace(Operator(swap, {2, 2}), {});
    ASSERT_EQ(r.side(), 1u);
    EXPECT_EQ(r(0, 0), cplx(2.0, 0.0));
}

TEST(PartialTrace, KeepAllIsIdentityMap) {
    Rng rng(14);
    const Operator ab = tensor_product(random_matrix(rng, 2), random_matrix(rng, 3));
    EXPECT_EQ(diff(partial_trace(ab, {0, 1}).matrix(), ab.matrix()), 0.0);
}

TEST(PartialTrace, TraceIndependentOfOrder) {
    Rng rng(15);
    const Operator m(random_matrix(rng, 12).matrix(), {2, 3, 2});
    const cplx direct = m.trace();
    const cplx a = partial_trace(partial_trace(m, {0, 2}), {1}).trace();
    const cplx b = partial_trace(partial_trace(m, {1}), {}).trace();
    const cplx c = partial_trace(m, {2}).trace();
    EXPECT_LE(std::abs(a - direct), 1e-13);
    EXPECT_LE(std::abs(b - direct), 1e-13);
    EXPECT_LE(std::abs(c - direct), 1e-13);
}

TEST(PartialTrace, MiddleFactorAgainstBruteForce) {
    Rng rng(16);
    const Operator m(random_matrix(rng, 12).matrix(), {2, 3, 2});
    const Operator r = partial_trace(m, {0, 2});
    // r[(a,c),(a',c')] = sum_b m[(a,b,c),(a',b,c')]
    for (int a = 0; a < 2; ++a) {
        for (int c = 0; c < 2; ++c) {
            for (int a2 = 0; a2 < 2; ++a2) {
                for (int c2 = 0; c2 < 2; ++c2) {
                    cplx s = 0.0;
                    for (int b = 0; b < 3; ++b) {
                        s += m.matrix()(a * 6 + b * 2 + c, a2 * 6 + b * 2 + c2);
                    }
                    EXPECT_LE(std::abs(r.matrix()(a * 2 + c, a2 * 2 + c2) - s), 1e-14);
                }
            }
        }
    }
}

TEST(MatrixExp, ZeroScaleIsIdentity) {
    Rng rng(17);
    const Operator a = random_matrix(rng, 4);
    EXPECT_EQ(diff(matrix_exp(a, 0.0).matrix(), Matrix::Identity(4, 4)), 0.0);
}

TEST(MatrixExp, PauliZClosedForm) {
    const Operator u = matrix_exp(pauli::z(), cplx(0.0, std::numbers::pi / 2.0));
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = cplx(0.0, 1.0);
    expected(1, 1) = cplx(0.0, -1.0);
    EXPECT_LE(diff(u.matrix(), expected), 1e-15);
}

TEST(MatrixExp, HermitianGeneratesUnitaryAndInverse) {
    Rng rng(18);
    for (std::size_t side : {2u, 5u, 16u, 64u}) {
        const Operator h = random_hermitian(rng, side);
        const Operator u = matrix_exp(h, cplx(0.0, 0.37));
        const Operator v = matrix_exp(h, cplx(0.0, -0.37));
        const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
        EXPECT_LE(diff(u.matrix().adjoint() * u.matrix(), id), 1e-12) << side;
        EXPECT_LE(diff(u.matrix() * v.matrix(), id), 1e-12) << side;
    }
}

TEST(MatrixExp, NonNormalMatchesTaylorOracle) {
    Rng rng(19);
    for (int t = 0; t < 10; ++t) {
        const Operator a = random_matrix(rng, 5);
        const cplx s(0.3, -0.8);
        const Matrix expected = testing::taylor_exp(s * a.matrix());
        EXPECT_LE(diff(matrix_exp(a, s).matrix(), expected), 1e-11 * testing::max_abs(expected));
    }
}

TEST(MatrixExp, RejectsNonFinite) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 1) = cplx(std::nan(""), 0.0);
    EXPECT_THROW(matrix_exp(Operator(m), 1.0), NumericError);
}

TEST(EigSpectrum, PauliX) {
    const Spectrum s = eig_spectrum(pauli::x());
    ASSERT_EQ(s.values.size(), 2u);
    EXPECT_NEAR(s.values[0].real(), 1.0, 1e-15);
    EXPECT_NEAR(s.values[1].real(), -1.0, 1e-15);
}

TEST(EigSpectrum, RankOneProjector) {
    Rng rng(20);
    const StateVector v = random_state(rng, 5);
    const Spectrum s = eig_spectrum(v.projector());
    EXPECT_NEAR(std::abs(s.values[0] - 1.0), 0.0, 1e-14);
    for (std::size_t i = 1; i < s.values.size(); ++i) {
        EXPECT_LE(std::abs(s.values[i]), 1e-14);
    }
}

TEST(EigSpectrum, HermitianTwoByTwoQuadraticFormula) {
    Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        const Operator h = random_hermitian(rng, 2);
        const double a = h(0, 0).real();
        const double d = h(1, 1).real();
        const double off = std::norm(h(0, 1));
        const double mid = (a + d) / 2.0;
        const double rad = std::sqrt((a - d) * (a - d) / 4.0 + off);
        const Spectrum s = eig_spectrum(h);
        EXPECT_NEAR(s.values[0].real(), mid + rad, 1e-13);
        EXPECT_NEAR(s.values[1].real(), mid - rad, 1e-13);
    }
}

TEST(EigSpectrum, OrderingAndVectors) {
    Rng rng(22);
    const Operator m = random_matrix(rng, 6);
    const Spectrum s = eig_spectrum(m, true);
    ASSERT_TRUE(s.vectors.has_value());
    for (std::size_t i = 1; i < s.values.size(); ++i) {
        const bool ordered = s.values[i - 1].real() > s.values[i].real() ||
                             (s.values[i - 1].real() == s.values[i].real() &&
                              s.values[i - 1].imag() >= s.values[i].imag());
        EXPECT_TRUE(ordered);
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const Vector v = s.vectors->col(static_cast<Eigen::Index>(i));
        EXPECT_LE((m.matrix() * v - s.values[i] * v).norm(), 1e-12);
    }
    // Repeated calls are bit-identical.
    const Spectrum again = eig_spectrum(m);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        EXPECT_EQ(s.values[i], again.values[i]);
    }
}

TEST(OperatorShape, RejectsInconsistentShape) {
    EXPECT_THROW(Operator(Matrix::Identity(4, 4), {2, 3}), InvalidArgument);
    EXPECT_THROW(Operator(Matrix::Identity(4, 4), {}), InvalidArgument);
    EXPECT_THROW(StateVector(Vector::Zero(3), {2}), InvalidArgument);
}

TEST(GeneralizedStateTest, DensityIsTraceOneIdempotent) {
    Rng rng(23);
    for (int t = 0; t < 10; ++t) {
        const GeneralizedState g(random_state(rng, 6), random_state(rng, 6));
        const Matrix r = g.density().matrix();
        EXPECT_LE(std::abs(r.trace() - 1.0), 1e-10);
        EXPECT_LE(diff(r * r, r), 1e-10 * std::max(1.0, testing::max_abs(r)));
    }
}

TEST(GeneralizedStateTest, RejectsOrthogonalPair) {
    const StateVector a = StateVector::basis({2}, 0);
    const StateVector b = StateVector::basis({2}, 1);
    EXPECT_THROW(GeneralizedState(a, b), DegenerateNormalization);
}

}  // namespace
}  // namespace xtqm
