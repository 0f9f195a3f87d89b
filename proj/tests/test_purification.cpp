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

#include <Eigen/Eigenvalues>

#include "test_util.hpp"
#include "xtqm/correspondence.hpp"
#include "xtqm/errors.hpp"
#include "xtqm/numeric_policy.hpp"
#include "xtqm/purification.hpp"
#include "xtqm/random.hpp"

namespace xtqm {
namespace {

using testing::diff;

GeneralizedState single_mode(cplx lambda, std::size_t n_max) {
    return purified_vacua(ModeSpectrum({lambda}), TruncatedFockSpace(n_max, 1));
}

TEST(PurifiedVacua, RealLambdaGivesEqualVectors) {
    const GeneralizedState s = single_mode(1.3, 30);
    EXPECT_EQ(diff(s.ket().vector(), s.bra().vector()), 0.0);
}

TEST(PurifiedVacua, OverlapAgainstGeometricSeries) {
    const GeneralizedState s = single_mode(1.0, 40);
    const double limit = 1.0 / (1.0 - std::exp(-1.0));
    // Truncation error e^{-41} / (1 - e^{-1}) is far below round-off.
    EXPECT_LE(std::abs(s.overlap() - limit) / limit, 2.0 * std::numeric_limits<double>::epsilon());
    for (cplx lambda : {cplx(0.7, -0.3), cplx(2.0, 0.5), cplx(3.0, 1.0)}) {
        const std::size_t n_max = required_n_max(lambda, 1e-12);
        const cplx direct = single_mode(lambda, n_max).overlap();
        cplx series = 0.0;
        for (std::size_t n = 0; n <= n_max; ++n) {
            series += std::exp(-lambda * static_cast<double>(n));
        }
        EXPECT_LE(std::abs(direct - series), 1e-13);
        EXPECT_LE(std::abs(geometric_overlap(lambda, n_max) - series), 1e-13);
        EXPECT_LE(std::abs(geometric_overlap_limit(lambda) - 1.0 / (1.0 - std::exp(-lambda))), 1e-15);
    }
}

TEST(PurifiedVacua, EnvironmentTraceIsBoltzmannKernel) {
    for (cplx lambda : {cplx(1.0, 0.0), cplx(1.5, 0.8)}) {
        const std::size_t n_max = 30;
        const GeneralizedState s = single_mode(lambda, n_max);
        const Matrix reduced = reduce_to_leading(s, 1).matrix();
        Matrix kernel = Matrix::Zero(n_max + 1, n_max + 1);
        for (std::size_t n = 0; n <= n_max; ++n) {
            kernel(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) =
                std::exp(-lambda * static_cast<double>(n));
        }
        EXPECT_LE(diff(reduced, kernel / kernel.trace()), 1e-12);
    }
}

TEST(PurifiedVacua, RefusesShortTruncation) {
    try {
        single_mode(1.0, 5);
        FAIL() << "expected a truncation error";
    } catch (const TruncationError &e) {
        EXPECT_EQ(e.required_n_max, required_n_max(1.0, policy().truncation_bound));
        EXPECT_LT(std::exp(-1.0 * static_cast<double>(e.required_n_max)), policy().truncation_bound);
    }
    EXPECT_THROW(ModeSpectrum({cplx(-0.1, 0.0)}), InvalidArgument);
}

TEST(PurifiedVacua, TwoModesFactorize) {
    const GeneralizedState s = purified_vacua(ModeSpectrum({cplx(3.0, 0.2), cplx(4.0, -0.5)}), TruncatedFockSpace(10, 2));
    EXPECT_LE(std::abs(s.overlap() - geometric_overlap(cplx(3.0, 0.2), 10) * geometric_overlap(cplx(4.0, -0.5), 10)),
              1e-13);
}

TEST(Bogoliubov, UnitLambdaValues) {
    const BogoliubovPair c = bogoliubov_coeffs(1.0);
    const double den = std::sqrt(1.0 - std::exp(-1.0));
    EXPECT_NEAR(c.u.real(), 1.0 / den, 1e-15);
    EXPECT_NEAR(c.v.real(), -std::exp(-0.5) / den, 1e-15);
    EXPECT_NEAR(c.u.real(), 1.257767, 1e-6);
    EXPECT_NEAR(c.v.real(), -0.762874, 1e-6);
    EXPECT_NEAR(c.hyperbolic_norm(), 1.0, 1e-15);
}

TEST(Bogoliubov, ZeroTemperatureLimitAndComplexLambda) {
    const BogoliubovPair cold = bogoliubov_coeffs(60.0);
    EXPECT_NEAR(std::abs(cold.u - 1.0), 0.0, 1e-15);
    EXPECT_LE(std::abs(cold.v), 1e-13);
    EXPECT_NEAR(bogoliubov_coeffs(cplx(1.0, 2.0)).hyperbolic_norm(), 1.0, 1e-14);
    EXPECT_THROW(bogoliubov_coeffs(cplx(0.0, 1.0)), InvalidArgument);
}

TEST(Bogoliubov, HyperbolicIdentityOverRandomLambda) {
    Rng rng(61);
    for (int t = 0; t < 1000; ++t) {
        const cplx lambda(uniform(rng, 1e-3, 20.0), uniform(rng, -10.0, 10.0));
        EXPECT_NEAR(bogoliubov_coeffs(lambda).hyperbolic_norm(), 1.0, 1e-12) << lambda;
    }
}

TEST(Annihilation, TruncationLimitedResidual) {
    const TruncatedFockSpace fock(40, 1);
    const GeneralizedState s = single_mode(1.0, 40);
    const double r = annihilation_check(s, 1.0, fock);
    EXPECT_LT(r, 1e-8);
    EXPECT_NEAR(r, annihilation_bound(1.0, 40), 1e-12 * r);
}

TEST(Annihilation, LargeLambdaIsNearlyVacuum) {
    const TruncatedFockSpace fock(8, 1);
    EXPECT_LT(annihilation_check(single_mode(10.0, 8), 10.0, fock), 1e-15);
}

TEST(Annihilation, ConjugateLadderKillsBra) {
    const cplx lambda(1.2, 0.9);
    const std::size_t n_max = required_n_max(lambda, 1e-12);
    const TruncatedFockSpace fock(n_max, 1);
    const GeneralizedState s = single_mode(lambda, n_max);
    const double bound = annihilation_bound(lambda, n_max);
    for (auto target : {LadderTarget::system, LadderTarget::environment}) {
        EXPECT_LE(annihilation_check(s, lambda, fock, 0, target, false), bound * (1.0 + 1e-12));
        EXPECT_LE(annihilation_check(s, lambda, fock, 0, target, true), bound * (1.0 + 1e-12));
    }
    // The ket ladder does not kill the bra when lambda is complex.
    EXPECT_GT(annihilation_check(s, std::conj(lambda), fock, 0, LadderTarget::system, false), 1e-3);
}

TEST(WeakValue, IdentityAndOccupation) {
    for (cplx lambda : {cplx(0.5, 0.0), cplx(1.0, 0.0), cplx(0.7, -0.3), cplx(2.0, 0.5), cplx(3.0, 1.0)}) {
        const std::size_t n_max = required_n_max(lambda, 1e-12);
        const TruncatedFockSpace fock(n_max, 1);
        const GeneralizedState s = single_mode(lambda, n_max);
        EXPECT_LE(std::abs(weak_value(s, Operator::identity(fock.system_shape())) - 1.0), 1e-13);
        const cplx occ = weak_value(s, number_operator(fock, 0));
        EXPECT_LE(std::abs(occ - 1.0 / (std::exp(lambda) - 1.0)), occupation_tail_bound(lambda, n_max)) << lambda;
        EXPECT_LE(std::abs(bose_occupation(lambda) - 1.0 / (std::exp(lambda) - 1.0)), 1e-15);
    }
}

TEST(QubitState, FreeCaseReducesToProjectedSwap) {
    const GeneralizedState s = qubit_generalized_state(Operator::zero({2}), 0.3);
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    Matrix p0 = Matrix::Zero(4, 4);
    p0(0, 0) = p0(1, 1) = 1.0;
    const Matrix rho = p0 * swap;
    EXPECT_LE(diff(reduce_to_leading(s, 2).matrix(), rho / rho.trace()), 1e-14);
}

TEST(QubitState, OverlapIsHalfReturnAmplitude) {
    const GeneralizedState s = qubit_generalized_state(pauli::x(), 0.3);
    EXPECT_LE(std::abs(2.0 * s.overlap() - std::cos(0.6)), 1e-15);
}

TEST(QubitState, PurificationMatchesPauliTable) {
    Rng rng(62);
    const StateVector zero(Vector::Unit(2, 0), {2});
    std::vector<Operator> hs{pauli::x()};
    for (int k = 0; k < 10; ++k) {
        hs.push_back(random_hermitian(rng, 2));
    }
    for (const auto &h : hs) {
        const GeneralizedState s = qubit_generalized_state(h, 0.3);
        const PauliTable t = pauli_extended_state(h, 0.3, zero);
        EXPECT_LE(diff(reduce_to_leading(s, 2).matrix(), t.rho_bar.matrix() / t.rho_bar.trace()), 1e-12);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const cplx w = weak_value(s, tensor_product(pauli::by_index(i), pauli::by_index(j)));
                const cplx c = t.coefficients[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /
                               t.coefficients[0][0];
                EXPECT_LE(std::abs(w - c), 1e-12);
            }
        }
    }
}

TEST(QubitState, VanishingReturnAmplitudeIsRejected) {
    EXPECT_THROW(qubit_generalized_state(pauli::x(), std::numbers::pi / 4.0), DegenerateNormalization);
}

TEST(PseudoEntropy, RankOneStatesVanish) {
    Rng rng(63);
    for (int t = 0; t < 10; ++t) {
        const GeneralizedState g(random_state(rng, 9), random_state(rng, 9));
        EXPECT_LE(std::abs(pseudo_entropy(g)), 1e-10);
    }
    EXPECT_LE(std::abs(pseudo_entropy(single_mode(cplx(2.0, 0.5), 14))), 1e-10);
    EXPECT_LE(std::abs(pseudo_entropy(qubit_generalized_state(pauli::x(), 0.3))), 1e-10);
}

TEST(PseudoEntropy, MaximallyMixedQubit) {
    const Operator half(Matrix::Identity(2, 2) / 2.0, {2});
    EXPECT_NEAR(std::abs(pseudo_entropy(half) - std::log(2.0)), 0.0, 1e-15);
}

TEST(PseudoEntropy, AgreesWithVonNeumannOnDensities) {
    Rng rng(64);
    for (int t = 0; t < 20; ++t) {
        const Operator rho = random_density(rng, 4);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
        double s = 0.0;
        for (Eigen::Index i = 0; i < 4; ++i) {
            const double p = es.eigenvalues()(i);
            if (p > 1e-15) {
                s -= p * std::log(p);
            }
        }
        EXPECT_LE(std::abs(pseudo_entropy(rho) - s), 1e-10);
    }
}

TEST(PseudoEntropy, QubitReducedValueIsBitStable) {
    const GeneralizedState s = qubit_generalized_state(pauli::x(), 0.3);
    const cplx a = pseudo_entropy(reduce_to_leading(s, 1));
    const cplx b = pseudo_entropy(reduce_to_leading(qubit_generalized_state(pauli::x(), 0.3), 1));
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::isfinite(a.real()) && std::isfinite(a.imag()));
}

TEST(PseudoEntropy, RejectsTraceFarFromOne) {
    EXPECT_THROW(pseudo_entropy(Operator(Matrix::Identity(2, 2), {2})), InvalidArgument);
}

}  // namespace
}  // namespace xtqm
