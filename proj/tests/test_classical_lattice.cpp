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

#include <gtest/gtest.h>

#include "xtqm/classical_lattice.hpp"
#include "xtqm/errors.hpp"
#include "xtqm/poisson.hpp"
#include "xtqm/random.hpp"

namespace xtqm {
namespace {

constexpr double kPi = std::numbers::pi;

SpaceVector vec2(double a, double b) {
    SpaceVector v(2);
    v << a, b;
    return v;
}

// Exact plane-wave solution with pi = n.d phi / ||n||^2.
LatticeField plane_wave(const LatticeGeometry &g, const Foliation &fol, double k, double mass) {
    const double w = std::sqrt(k * k + mass * mass);
    const SpaceVector n = fol.n();
    const double n2 = fol.norm2();
    return LatticeField::sample(
        g, [=](const SpaceVector &x) { return std::cos(k * x(1) - w * x(0)); },
        [=](const SpaceVector &x) { return (n(0) * w - n(1) * k) * std::sin(k * x(1) - w * x(0)) / n2; });
}

LatticeGeometry wave_grid(std::size_t n) {
    const double dx = 2.0 * kPi / static_cast<double>(n);
    return LatticeGeometry(16, n, dx, dx, 0.3, 0.0);
}

double order(double coarse, double fine) {
    return std::log2(coarse / fine);
}

auto gauss_phi = [](const SpaceVector &x) { return std::exp(-(x(0) * x(0) + 2.0 * x(1) * x(1))); };
auto gauss_pi = [](const SpaceVector &x) { return std::exp(-((x(0) - 0.3) * (x(0) - 0.3) + x(1) * x(1))) * x(1); };

LatticeGeometry square_grid(std::size_t n, double len = 8.0) {
    const double dx = len / static_cast<double>(n);
    return LatticeGeometry(n, n, dx, dx, -len / 2.0, -len / 2.0);
}

TEST(LatticeGeometryTest, Validation) {
    EXPECT_THROW(LatticeGeometry(4, 4, 0.1, 0.1), InvalidArgument);
    EXPECT_THROW(LatticeGeometry(4, 8, -0.1, 0.1), InvalidArgument);
    EXPECT_THROW(LatticeGeometry(4, 8, 0.1, 0.1, 0.0, 0.0, Foliation::canonical(3)), InvalidArgument);
    const LatticeGeometry g(4, 8, 0.1, 0.2, 1.0, -1.0);
    EXPECT_EQ(g.sites(), 32u);
    EXPECT_NEAR(g.length(), 1.6, 1e-15);
    EXPECT_THROW(LatticeField(g, Eigen::MatrixXd::Zero(3, 8), Eigen::MatrixXd::Zero(4, 8)), InvalidArgument);
}

TEST(LatticeGeometryTest, TiltedAxesMapToLab) {
    const Foliation axes = Foliation::from_rapidity(2, 0.5);
    const LatticeGeometry g(4, 8, 0.1, 0.1, 0.0, 0.0, axes);
    const SpaceVector x = g.lab_point(1.0, 0.0);
    EXPECT_NEAR(x(0), std::cosh(0.5), 1e-15);
    EXPECT_NEAR(x(1), std::sinh(0.5), 1e-15);
}

TEST(HamiltonianDensity, ConstantFieldIsMassTerm) {
    const LatticeGeometry g(5, 8, 0.1, 0.1);
    const LatticeField f(g, Eigen::MatrixXd::Constant(5, 8, 0.7), Eigen::MatrixXd::Zero(5, 8));
    EXPECT_NEAR(hamiltonian_density(f, Foliation::from_rapidity(2, 0.8), 1.3, 2, 3), 0.5 * 1.69 * 0.49, 1e-15);
}

TEST(HamiltonianDensity, LabFoliationIsTextbookDensity) {
    // Linear fields are differentiated exactly by central differences.
    const LatticeGeometry g(5, 8, 0.1, 0.1);
    const LatticeField f = LatticeField::sample(
        g, [](const SpaceVector &x) { return 0.4 * x(0) - 0.9 * x(1) + 0.2; }, [](const SpaceVector &) { return 0.4; });
    const double phi = 0.4 * g.t(2) - 0.9 * g.x(3) + 0.2;
    const double expected = 0.5 * 0.16 + 0.5 * 0.81 + 0.5 * 4.0 * phi * phi;
    EXPECT_NEAR(hamiltonian_density(f, Foliation::canonical(2), 2.0, 2, 3), expected, 1e-13);
}

TEST(HamiltonianDensity, NonNegativeForRandomData) {
    Rng rng(81);
    const LatticeGeometry g(6, 8, 0.1, 0.1);
    for (int t = 0; t < 50; ++t) {
        Eigen::MatrixXd phi(6, 8);
        Eigen::MatrixXd pi(6, 8);
        for (Eigen::Index k = 0; k < phi.size(); ++k) {
            phi(k) = gaussian(rng);
            pi(k) = gaussian(rng);
        }
        const LatticeField f(g, phi, pi, 0.5);
        const double eta = uniform(rng, -2.0, 2.0);
        for (std::size_t i = 1; i < 5; ++i) {
            EXPECT_GE(hamiltonian_density(f, Foliation::from_rapidity(2, eta).scaled(1.7), 0.8, i, 4), 0.0);
        }
    }
}

TEST(HamiltonRhs, ZeroFieldIsStatic) {
    const LatticeGeometry g(6, 8, 0.1, 0.1);
    const LatticeField f(g, Eigen::MatrixXd::Zero(6, 8), Eigen::MatrixXd::Zero(6, 8));
    const HamiltonRhs r = hamilton_rhs(f, Foliation::from_rapidity(2, 0.4), 1.0);
    EXPECT_EQ(r.dphi_along_n.rows(), 4);
    EXPECT_EQ(r.dphi_along_n.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(r.dpi_along_n.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(physical_constraint_residual(f, Foliation::from_rapidity(2, 0.4), 1.0).max_abs(), 0.0);
}

TEST(HamiltonRhs, PlaneWaveResidualsAreSecondOrder) {
    for (double eta : {0.0, 0.4}) {
        const Foliation fol = Foliation::from_rapidity(2, eta);
        double prev_pi = 0.0;
        double prev_phi = 0.0;
        double prev_kg = 0.0;
        for (std::size_t n : {32u, 64u, 128u}) {
            const LatticeField f = plane_wave(wave_grid(n), fol, 1.0, 1.0);
            const ConstraintResidual r = physical_constraint_residual(f, fol, 1.0);
            const double pi_res = r.pi_equation.cwiseAbs().maxCoeff();
            const double phi_res = r.phi_equation.cwiseAbs().maxCoeff();
            const double kg = kg_residual(f, 1.0).cwiseAbs().maxCoeff();
            if (n > 32) {
                for (double o : {order(prev_pi, pi_res), order(prev_phi, phi_res), order(prev_kg, kg)}) {
                    EXPECT_GE(o, 1.9) << "eta=" << eta << " N=" << n;
                    EXPECT_LE(o, 2.1) << "eta=" << eta << " N=" << n;
                }
            }
            prev_pi = pi_res;
            prev_phi = phi_res;
            prev_kg = kg;
        }
    }
}

TEST(HamiltonRhs, RandomFieldIsNotASolution) {
    Rng rng(82);
    const LatticeGeometry g = wave_grid(32);
    Eigen::MatrixXd phi(16, 32);
    Eigen::MatrixXd pi(16, 32);
    for (Eigen::Index k = 0; k < phi.size(); ++k) {
        phi(k) = gaussian(rng);
        pi(k) = gaussian(rng);
    }
    EXPECT_GT(physical_constraint_residual(LatticeField(g, phi, pi), Foliation::canonical(2), 1.0).max_abs(), 0.5);
}

TEST(StressEnergy, AgreesWithHamiltonianOnShell) {
    const Foliation fol = Foliation::from_rapidity(2, 0.4);
    double prev = 0.0;
    for (std::size_t n : {32u, 64u, 128u}) {
        const LatticeField f = plane_wave(wave_grid(n), fol, 1.0, 1.0);
        double worst = 0.0;
        for (std::size_t i = 2; i < 14; ++i) {
            for (std::size_t j = 0; j < n; j += n / 8) {
                worst = std::max(worst, std::abs(hamiltonian_density(f, fol, 1.0, i, j) -
                                                 stress_energy_density(f, fol, 1.0, i, j)));
            }
        }
        if (n > 32) {
            EXPECT_GE(order(prev, worst), 1.8) << "N=" << n;
        }
        prev = worst;
    }
}

TEST(Evolution, ConvergesToStandingWave) {
    // phi(0) = cos x, pi(0) = 0 evolves to cos x cos(w t).
    const double mass = 1.0;
    const double w = std::sqrt(2.0);
    const double end = kPi / 4.0;
    double prev = 0.0;
    for (std::size_t n : {32u, 64u, 128u}) {
        const double dx = 2.0 * kPi / static_cast<double>(n);
        Eigen::VectorXd phi0(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) {
            phi0(static_cast<Eigen::Index>(j)) = std::cos(dx * static_cast<double>(j));
        }
        EvolutionOptions opt;
        // dt = dx / 2 cancels the leading dispersion error of this mode
        opt.dt = dx / 4.0;
        opt.steps = n / 2;
        opt.mass = mass;
        const LatticeField f =
            evolve_along_n(phi0, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), dx, Foliation::canonical(2), opt);
        const Eigen::VectorXd last = f.phi().row(f.phi().rows() - 1).transpose();
        const double err = (last - phi0 * std::cos(w * end)).cwiseAbs().maxCoeff();
        if (n > 32) {
            EXPECT_NEAR(order(prev, err), 2.0, 0.1) << "N=" << n;
        }
        prev = err;
    }
}

TEST(Evolution, OutputSatisfiesHamiltonEquations) {
    for (double eta : {0.0, 0.4}) {
        const Foliation fol = Foliation::from_rapidity(2, eta).scaled(1.3);
        double prev = 0.0;
        for (std::size_t n : {32u, 64u, 128u}) {
            const double dx = 2.0 * kPi / static_cast<double>(n);
            Eigen::VectorXd phi0(static_cast<Eigen::Index>(n));
            for (std::size_t j = 0; j < n; ++j) {
                phi0(static_cast<Eigen::Index>(j)) = std::cos(dx * static_cast<double>(j));
            }
            EvolutionOptions opt;
            opt.dt = dx / 4.0;
            opt.steps = 16;
            const LatticeField f =
                evolve_along_n(phi0, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), dx, fol, opt);
            const double res = physical_constraint_residual(f, fol, opt.mass).max_abs();
            if (n > 32) {
                EXPECT_GE(order(prev, res), 1.8) << "eta=" << eta << " N=" << n;
            }
            prev = res;
        }
    }
}

TEST(Evolution, ZeroStaysZeroAndEnergyIsBounded) {
    const std::size_t n = 64;
    const double dx = 2.0 * kPi / static_cast<double>(n);
    EvolutionOptions opt;
    opt.steps = 400;
    opt.dt = dx / 2.0;
    const Foliation fol = Foliation::from_rapidity(2, 0.3).scaled(1.5);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    EXPECT_EQ(evolve_along_n(zero, zero, dx, fol, opt).phi().cwiseAbs().maxCoeff(), 0.0);

    Eigen::VectorXd phi0(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        phi0(static_cast<Eigen::Index>(j)) = std::exp(-std::pow(dx * static_cast<double>(j) - kPi, 2));
    }
    double prev = 0.0;
    for (double dt : {dx / 2.0, dx / 4.0}) {
        opt.dt = dt;
        opt.steps = static_cast<std::size_t>(std::llround(4.0 / dt));
        const LatticeField f = evolve_along_n(phi0, zero, dx, fol, opt);
        const std::vector<double> e = frame_energy(f, fol, opt.mass);
        double drift = 0.0;
        for (double v : e) {
            drift = std::max(drift, std::abs(v - e.front()) / e.front());
        }
        EXPECT_LT(drift, 1e-2);
        if (prev > 0.0) {
            EXPECT_GE(order(prev, drift), 1.8);
        }
        prev = drift;
    }
}

TEST(Evolution, UnstableStepThrows) {
    const std::size_t n = 32;
    const double dx = 2.0 * kPi / static_cast<double>(n);
    Eigen::VectorXd phi0(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        phi0(static_cast<Eigen::Index>(j)) = (j % 2 == 0) ? 1.0 : -1.0;
    }
    EvolutionOptions opt;
    opt.dt = 3.0 * dx;
    opt.steps = 200;
    EXPECT_THROW(evolve_along_n(phi0, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), dx,
                                Foliation::canonical(2), opt),
                 StabilityError);
    opt.steps = 0;
    EXPECT_THROW(evolve_along_n(phi0, phi0, dx, Foliation::canonical(2), opt), InvalidArgument);
}

TEST(ScalarCovariance, IdentityIsExactAndBoostConverges) {
    const Foliation fol = Foliation::from_rapidity(2, 0.4);
    const LatticeField coarse = plane_wave(wave_grid(32), fol, 1.0, 1.0);
    EXPECT_LE(scalar_covariance_check(coarse, BoostMatrix::boost(2, 1, 0.0), fol, 1.0).max_deviation, 1e-13);
    const BoostMatrix boost = BoostMatrix::boost(2, 1, 0.3);
    const double dev32 = scalar_covariance_check(coarse, boost, fol, 1.0).max_deviation;
    const double dev64 =
        scalar_covariance_check(plane_wave(wave_grid(64), fol, 1.0, 1.0), boost, fol, 1.0).max_deviation;
    EXPECT_GE(dev32 / dev64, 4.0);
}

TEST(ScalarCovariance, ProbeOutsideTheBlockThrows) {
    const Foliation fol = Foliation::canonical(2);
    const LatticeField f = plane_wave(wave_grid(32), fol, 1.0, 1.0);
    const std::vector<std::pair<std::size_t, std::size_t>> edge = {{0, 0}};
    EXPECT_THROW(scalar_covariance_check(f, BoostMatrix::boost(2, 1, 0.3), fol, 1.0, edge), InvalidArgument);
}

TEST(PoissonBracket, AntisymmetryAndSelfBracket) {
    const LatticeGeometry g = square_grid(16);
    const Foliation fol = Foliation::from_rapidity(2, 0.3);
    const QuadraticFunctional s = free_action(g, fol, 1.0);
    const QuadraticFunctional l = boost_generator(g);
    const QuadraticFunctional p0 = p0_generator(g, fol);
    EXPECT_LE(extended_pb(s, s).coefficient_norm(), 1e-12 * s.coefficient_norm() * s.coefficient_norm());
    EXPECT_LE((extended_pb(s, l) + extended_pb(l, s)).coefficient_norm(), 1e-12 * extended_pb(s, l).coefficient_norm());
    EXPECT_LE((extended_pb(l, p0) + extended_pb(p0, l)).coefficient_norm(),
              1e-12 * extended_pb(l, p0).coefficient_norm());
}

TEST(PoissonBracket, CanonicalPairs) {
    const LatticeGeometry g = square_grid(16);
    const double unit = 1.0 / (g.dt() * g.dx());
    const auto br = extended_pb(QuadraticFunctional::phi_at(g, 3, 5), QuadraticFunctional::pi_at(g, 3, 5));
    EXPECT_NEAR(br.constant(), unit, 1e-12 * unit);
    EXPECT_EQ(br.quadratic().norm(), 0.0);
    EXPECT_EQ(br.linear().norm(), 0.0);
    EXPECT_EQ(extended_pb(QuadraticFunctional::phi_at(g, 3, 5), QuadraticFunctional::pi_at(g, 5, 3))
                  .coefficient_norm(),
              0.0);
    EXPECT_EQ(extended_pb(QuadraticFunctional::phi_at(g, 3, 5), QuadraticFunctional::phi_at(g, 2, 2))
                  .coefficient_norm(),
              0.0);
    EXPECT_NEAR(extended_pb(QuadraticFunctional::pi_at(g, 3, 5), QuadraticFunctional::phi_at(g, 3, 5)).constant(),
                -unit, 1e-12 * unit);
}

TEST(PoissonBracket, JacobiIdentity) {
    const LatticeGeometry g = square_grid(16);
    const Foliation fol = Foliation::from_rapidity(2, -0.2);
    const QuadraticFunctional a = free_action(g, fol, 0.7);
    const QuadraticFunctional b = boost_generator(g);
    const QuadraticFunctional c = p0_generator(g, fol) + QuadraticFunctional::phi_at(g, 4, 4) * 2.0;
    const QuadraticFunctional jac =
        extended_pb(a, extended_pb(b, c)) + extended_pb(b, extended_pb(c, a)) + extended_pb(c, extended_pb(a, b));
    EXPECT_LE(jac.coefficient_norm(), 1e-12 * extended_pb(a, extended_pb(b, c)).coefficient_norm());
}

TEST(PoissonBracket, P0GeneratesNormalDerivative) {
    const SpaceVector at = vec2(0.5, 0.5);
    const Foliation fol = Foliation::from_rapidity(2, 0.3);
    const double exact = gauss_phi(at) * (-2.0 * at(0) * fol.n()(0) - 4.0 * at(1) * fol.n()(1));
    double prev = 0.0;
    for (std::size_t n : {32u, 64u, 128u}) {
        const LatticeGeometry g = square_grid(n);
        const auto i = static_cast<std::size_t>(std::llround((0.5 + 4.0) / g.dx()));
        const double value = extended_pb(QuadraticFunctional::phi_at(g, i, i), p0_generator(g, fol))
                                 .evaluate(phase_point(LatticeField::sample(g, gauss_phi, gauss_pi)));
        const double err = std::abs(value - exact);
        if (n > 32) {
            EXPECT_GE(order(prev, err), 1.9) << "N=" << n;
        }
        prev = err;
    }
}

TEST(PoissonBracket, BoostVariationOfActionVanishesInTheLimit) {
    const Foliation fol = Foliation::from_rapidity(2, 0.3);
    double prev = 0.0;
    for (std::size_t n : {16u, 32u, 64u}) {
        const LatticeGeometry g = square_grid(n);
        const Eigen::VectorXd z = phase_point(LatticeField::sample(g, gauss_phi, gauss_pi));
        const double var = std::abs(
            (extended_pb(free_action(g, fol, 1.0), boost_generator(g)) + action_foliation_derivative(g, fol, 1.0))
                .evaluate(z));
        if (n > 16) {
            EXPECT_GE(prev / var, 3.0) << "N=" << n;
        }
        prev = var;
    }
}

TEST(PoissonBracket, MismatchedGeometriesThrow) {
    EXPECT_THROW(extended_pb(QuadraticFunctional::zero(square_grid(8)), QuadraticFunctional::zero(square_grid(16))),
                 InvalidArgument);
    EXPECT_THROW(QuadraticFunctional::zero(square_grid(8)).evaluate(Eigen::VectorXd::Zero(3)), InvalidArgument);
    EXPECT_THROW(action_foliation_derivative(square_grid(8), Foliation::canonical(2), 1.0, 0.0), InvalidArgument);
}

}  // namespace
}  // namespace xtqm
