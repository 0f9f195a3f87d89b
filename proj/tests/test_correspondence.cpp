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
#include "xtqm/extended_space.hpp"
#include "xtqm/random.hpp"

namespace xtqm {
namespace {

using testing::diff;

const StateVector kZero(Vector::Unit(2, 0), {2});

Matrix qubit_propagator(const Matrix &h, double eps) {
    return testing::taylor_exp(cplx(0.0, -eps) * h);
}

TEST(ExtendedCorrelator, SwapTestGivesTraceOfProduct) {
    Rng rng(51);
    const DiscreteAction a = build_action(ExtendedSpace(3, 2, 0.5), Operator::zero({3}));
    for (int t = 0; t < 20; ++t) {
        const Operator x = random_matrix(rng, 3);
        const Operator y = random_matrix(rng, 3);
        const cplx ext = extended_correlator(a, {{1, x}, {2, y}});
        EXPECT_LE(std::abs(ext - (y.matrix() * x.matrix()).trace()), 1e-12);
    }
}

TEST(ExtendedCorrelator, WickTraceWithoutInsertions) {
    Rng rng(52);
    const Operator h = random_hermitian(rng, 3);
    const DiscreteAction a = build_action_wick(ExtendedSpace(3, 4, 0.3), h);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    double z = 0.0;
    for (Eigen::Index i = 0; i < 3; ++i) {
        z += std::exp(-1.2 * es.eigenvalues()(i));
    }
    EXPECT_LE(std::abs(extended_correlator(a, {}) - z), 1e-12);
}

TEST(ExtendedCorrelator, QubitZZAgainstClosedForm) {
    const double eps = 0.3;
    const DiscreteAction a = build_action(ExtendedSpace(2, 2, eps), pauli::x());
    const Matrix u = qubit_propagator(pauli::x().matrix(), eps);
    const Matrix z = pauli::z().matrix();
    const cplx expected = (kZero.vector().adjoint() * u * z * u * z * kZero.vector())(0, 0);
    const cplx ext = extended_correlator(a, {{1, pauli::z()}, {2, pauli::z()}}, kZero);
    EXPECT_LE(std::abs(ext - expected), 1e-14);
    EXPECT_LE(std::abs(heisenberg_oracle(pauli::x(), kZero, {{1, pauli::z()}, {2, pauli::z()}}, eps, 2) - expected),
              1e-14);
}

TEST(ExtendedCorrelator, RejectsBadInput) {
    const DiscreteAction a = build_action(ExtendedSpace(2, 2, 0.3), pauli::x());
    EXPECT_THROW(extended_correlator(a, {{3, pauli::z()}}), InvalidArgument);
    const StateVector unnormalized(Vector::Constant(2, 1.0), {2});
    EXPECT_THROW(extended_correlator(a, {}, unnormalized), InvalidArgument);
    EXPECT_THROW(InsertionList({{2, pauli::z()}, {1, pauli::z()}}), InvalidArgument);
}

TEST(HeisenbergOracle, NoInsertionsIsReturnAmplitude) {
    Rng rng(53);
    const Operator h = random_hermitian(rng, 3);
    const StateVector psi = random_state(rng, 3);
    const Matrix u = testing::taylor_exp(cplx(0.0, -0.2 * 4) * h.matrix());
    const cplx expected = (psi.vector().adjoint() * u * psi.vector())(0, 0);
    EXPECT_LE(std::abs(heisenberg_oracle(h, psi, {}, 0.2, 4) - expected), 1e-13);
    EXPECT_LE(std::abs(heisenberg_oracle(h, psi, {{2, Operator::identity({3})}}, 0.2, 4) - expected), 1e-13);
    EXPECT_LE(std::abs(heisenberg_oracle(Operator::zero({3}), psi, {}, 0.2, 4) - 1.0), 1e-15);
}

TEST(HeisenbergOracle, MatchesExtendedOnRandomDraws) {
    Rng rng(54);
    const ExtendedSpace space(3, 4, 0.25);
    for (int t = 0; t < 20; ++t) {
        const Operator h = random_hermitian(rng, 3);
        const StateVector psi = random_state(rng, 3);
        const InsertionList ins{{1, random_matrix(rng, 3)}, {3, random_matrix(rng, 3)}};
        const cplx ext = extended_correlator(build_action(space, h), ins, psi);
        EXPECT_LE(std::abs(ext - heisenberg_oracle(h, psi, ins, 0.25, 4)), 1e-10);
    }
}

TEST(HeisenbergOracle, SingleSliceInsertionsAreSameTime) {
    Rng rng(55);
    const Operator h = random_hermitian(rng, 2);
    const StateVector psi = random_state(rng, 2);
    const Operator o = random_matrix(rng, 2);
    const Matrix u = testing::taylor_exp(cplx(0.0, -0.3 * 3) * h.matrix());
    const cplx expected = (psi.vector().adjoint() * u * o.matrix() * psi.vector())(0, 0);
    const cplx ext = extended_correlator(build_action(ExtendedSpace(2, 3, 0.3), h), {{1, o}}, psi);
    EXPECT_LE(std::abs(ext - expected), 1e-12);
}

TEST(HeisenbergOracle, TraceOracleMatchesShiftedInsertions) {
    Rng rng(56);
    const ExtendedSpace space(2, 4, 0.3);
    const Operator h = random_hermitian(rng, 2);
    const DiscreteAction a = build_action(space, h);
    const InsertionList ins{{1, random_matrix(rng, 2)}, {2, random_matrix(rng, 2)}};
    const cplx base = extended_correlator(a, ins);
    EXPECT_LE(std::abs(base - heisenberg_trace_oracle(h, ins, 0.3, 4)), 1e-12);
    for (std::size_t shift = 1; shift < 4; ++shift) {
        EXPECT_LE(std::abs(extended_correlator(a, ins.shifted(shift, 4)) - base), 1e-12) << shift;
    }
}

TEST(VerifyMap, FreeSwapCaseIsExact) {
    MapSuite s;
    s.local_dim = 2;
    s.slices = 2;
    s.draw = HamiltonianDraw::zero;
    s.trials = 100;
    s.seed = 3;
    s.tolerance = 1e-12;
    for (const auto &r : verify_map(s)) {
        EXPECT_TRUE(r.passed) << r.trial << " " << r.abs_diff;
    }
}

TEST(VerifyMap, RandomAndTimeDependentDraws) {
    for (auto [d, n, draw] : {std::tuple{3u, 4u, HamiltonianDraw::random},
                              std::tuple{2u, 3u, HamiltonianDraw::random_time_dependent},
                              std::tuple{3u, 3u, HamiltonianDraw::random_time_dependent}}) {
        MapSuite s;
        s.local_dim = d;
        s.slices = n;
        s.draw = draw;
        s.trials = 100;
        s.seed = 9;
        const auto reports = verify_map(s);
        ASSERT_EQ(reports.size(), 100u);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            EXPECT_EQ(reports[i].trial, i);
            EXPECT_LT(reports[i].abs_diff, 1e-10);
            EXPECT_EQ(reports[i].passed, reports[i].abs_diff < s.tolerance);
        }
    }
}

TEST(VerifyMap, SeedDeterminesDraws) {
    MapSuite s;
    s.local_dim = 2;
    s.slices = 3;
    s.trials = 10;
    s.seed = 77;
    const auto a = verify_map(s);
    const auto b = verify_map(s);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].extended_value, b[i].extended_value);
        EXPECT_EQ(a[i].oracle_value, b[i].oracle_value);
    }
}

TEST(ThermalReduction, FreeHamiltonianGivesIdentity) {
    const DiscreteAction a = build_action_wick(ExtendedSpace(3, 4, 0.25), Operator::zero({3}));
    EXPECT_LE(diff(thermal_reduction(a).matrix(), Matrix::Identity(3, 3)), 1e-14);
}

TEST(ThermalReduction, RandomHamiltonianGivesGibbsKernel) {
    Rng rng(57);
    for (int t = 0; t < 5; ++t) {
        const Operator h = random_hermitian(rng, 3);
        const Operator r = thermal_reduction(build_action_wick(ExtendedSpace(3, 4, 0.25), h));
        EXPECT_LE(diff(r.matrix(), testing::taylor_exp(-1.0 * h.matrix())), 1e-10);
    }
}

TEST(ThermalReduction, CorrelatorMatchesImaginaryTimeOracle) {
    Rng rng(58);
    const Operator h = random_hermitian(rng, 2);
    const ExtendedSpace space(2, 4, 0.2);
    const DiscreteAction a = build_action_wick(space, h);
    const InsertionList ins{{1, random_matrix(rng, 2)}, {3, random_matrix(rng, 2)}, {4, random_matrix(rng, 2)}};
    EXPECT_LE(std::abs(extended_correlator(a, ins) - thermal_oracle(h, ins, 0.2, 4)), 1e-10);
}

TEST(ThermalReduction, RequiresWickAction) {
    EXPECT_THROW(thermal_reduction(build_action(ExtendedSpace(2, 2, 0.2), pauli::x())), InvalidArgument);
}

TEST(NormalizedCorrelator, DegenerateTraceIsRejected) {
    // eps H = (pi/2) sigma_z on one slice: Tr e^{iS} = 0.
    const DiscreteAction a = build_action(ExtendedSpace(2, 1, 1.0), (std::numbers::pi / 2.0) * pauli::z());
    EXPECT_THROW(normalized_correlator(a, {{1, pauli::x()}}), DegenerateNormalization);
    const DiscreteAction b = build_action(ExtendedSpace(2, 2, 0.3), pauli::x());
    const cplx n = normalized_correlator(b, {{1, pauli::z()}});
    EXPECT_LE(std::abs(n - extended_correlator(b, {{1, pauli::z()}}) / b.matrix.trace()), 1e-15);
}

TEST(PauliTableTest, FreeQubitNormalization) {
    const PauliTable t = pauli_extended_state(Operator::zero({2}), 0.3, kZero);
    EXPECT_LE(std::abs(t.coefficients[0][0] - 1.0), 1e-15);
}

TEST(PauliTableTest, CoefficientsMatchOracleAndReconstruct) {
    Rng rng(59);
    std::vector<Operator> hs{pauli::x()};
    for (int k = 0; k < 5; ++k) {
        hs.push_back(random_hermitian(rng, 2));
    }
    for (const auto &h : hs) {
        const PauliTable t = pauli_extended_state(h, 0.3, kZero);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const cplx oracle =
                    heisenberg_oracle(h, kZero, {{1, pauli::by_index(i)}, {2, pauli::by_index(j)}}, 0.3, 2);
                EXPECT_LE(std::abs(t.coefficients[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] - oracle),
                          1e-12)
                    << i << j;
            }
        }
        EXPECT_LE(diff(t.reconstruct().matrix(), t.rho_bar.matrix()), 1e-14);
    }
}

}  // namespace
}  // namespace xtqm
