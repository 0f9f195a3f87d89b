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

#include "xtqm/kg_modes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "xtqm/errors.hpp"

namespace xtqm {

namespace {

constexpr double kPi = std::numbers::pi;

void check_momentum(const SpaceVector &p, const Foliation &fol) {
    if (static_cast<std::size_t>(p.size()) != fol.dim()) {
        throw InvalidArgument("momentum and foliation dimensions differ");
    }
    if (!p.allFinite()) {
        throw InvalidArgument("momentum has non-finite components");
    }
}

void check_mass(double mass) {
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
        throw InvalidArgument("mass must be finite and non-negative");
    }
}

// exp(z) - 1 without cancellation for small |z|.
cplx expm1_complex(cplx z) {
    const double a = z.real();
    const double b = z.imag();
    const double s = std::sin(b / 2.0);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

std::string describe(const SpaceVector &p) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        os << (i ? ", " : "") << p(i);
    }
    os << ")";
    return os.str();
}

}  // namespace

void PropagatorConfig::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(mass)) {
        throw InvalidArgument("propagator config: mass must be positive");
    }
    if (!positive(tau)) {
        throw InvalidArgument("propagator config: tau must be positive");
    }
    if (!positive(eps_reg)) {
        throw InvalidArgument("propagator config: eps_reg must be positive");
    }
    if (!positive(cutoff)) {
        throw InvalidArgument("propagator config: cutoff must be positive");
    }
    if (!positive(resolution)) {
        throw InvalidArgument("propagator config: resolution must be positive");
    }
    if (!positive(tolerance)) {
        throw InvalidArgument("propagator config: tolerance must be positive");
    }
    if (dimension != 2 && dimension != 3) {
        throw InvalidArgument("propagator config: dimension must be 2 or 3");
    }
}

double energy_Ep(const SpaceVector &p, const Foliation &fol, double mass) {
    check_momentum(p, fol);
    check_mass(mass);
    const double pn = mdot(p, fol.n());
    const double q2 = pn * pn / fol.norm2() - mdot(p, p);
    return fol.norm() * std::sqrt(std::max(0.0, q2) + mass * mass);
}

double energy_Ep_frame(const SpaceVector &p, const Foliation &fol, double mass) {
    check_momentum(p, fol);
    check_mass(mass);
    double q2 = 0.0;
    for (const auto &ni : fol.frame()) {
        const double c = mdot(ni, p) / fol.norm();
        q2 += c * c;
    }
    return fol.norm() * std::sqrt(q2 + mass * mass);
}

cplx normal_frequency(const SpaceVector &p, const Foliation &fol, double mass, double eps_reg) {
    const double e = energy_Ep(p, fol, mass);
    return {(mdot(p, fol.n()) - e) / fol.norm2(), eps_reg};
}

cplx momentum_correlator(const SpaceVector &p, const Foliation &fol, const PropagatorConfig &cfg) {
    cfg.validate();
    const cplx nu = normal_frequency(p, fol, cfg.mass, cfg.eps_reg);
    const cplx denom = expm1_complex(cplx(0.0, -cfg.tau) * nu);
    if (std::abs(denom) < 1e-12) {
        throw SingularityError("momentum_correlator: pole at p = " + describe(p));
    }
    return 1.0 / denom;
}

cplx momentum_correlator(const SpaceVector &p, const SpaceVector &k, const Foliation &fol,
                         const PropagatorConfig &cfg) {
    if (p.size() != k.size()) {
        throw InvalidArgument("momentum_correlator: momentum dimensions differ");
    }
    if (p != k) {
        return {0.0, 0.0};
    }
    return momentum_correlator(p, fol, cfg);
}

cplx momentum_correlator_leading(const SpaceVector &p, const Foliation &fol, const PropagatorConfig &cfg) {
    cfg.validate();
    return cplx(0.0, 1.0) / normal_frequency(p, fol, cfg.mass, cfg.eps_reg);
}

SmallTauReport small_tau_check(const SpaceVector &p, const Foliation &fol, const PropagatorConfig &cfg) {
    const cplx lead = momentum_correlator_leading(p, fol, cfg);
    PropagatorConfig half = cfg;
    half.tau = cfg.tau / 2.0;
    const double d1 = std::abs(cfg.tau * momentum_correlator(p, fol, cfg) - lead);
    const double d2 = std::abs(half.tau * momentum_correlator(p, fol, half) - lead);
    return SmallTauReport{cfg.tau, d1, d2, d1 / cfg.tau};
}

PartialFraction partial_fraction_identity(const SpaceVector &p, double mass, double eps) {
    check_mass(mass);
    if (p.size() < 2 || !p.allFinite()) {
        throw InvalidArgument("partial_fraction_identity: need a finite (d+1)-momentum");
    }
    if (!(eps > 0.0)) {
        throw InvalidArgument("partial_fraction_identity: eps must be positive");
    }
    const double p0 = p(0);
    const double spatial2 = p.tail(p.size() - 1).squaredNorm();
    const double e = std::sqrt(spatial2 + mass * mass);
    if (!(e > 0.0)) {
        throw InvalidArgument("partial_fraction_identity: E_p must be positive");
    }
    const cplx i(0.0, 1.0);
    const cplx lhs = i / cplx(p0 - e, eps) - i / cplx(p0 + e, -eps);
    const cplx e_eps(e, -eps);
    const cplx rhs = 2.0 * e_eps * i / (p0 * p0 - e_eps * e_eps);
    const cplx lead = 2.0 * e * i / cplx(p0 * p0 - e * e, 2.0 * eps * e);
    const double scale = std::max(1.0, std::abs(lhs));
    return PartialFraction{lhs, rhs, std::abs(lhs - rhs) / scale, lead, std::abs(lhs - lead) / scale};
}

MatsubaraResult matsubara_correlator(double theta, std::size_t mode_cap, double energy, double beta,
                                     double tolerance) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw InvalidArgument("matsubara_correlator: beta must be positive");
    }
    if (!(theta >= 0.0) || !(theta < beta)) {
        throw InvalidArgument("matsubara_correlator: theta must lie in [0, beta)");
    }
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw InvalidArgument("matsubara_correlator: energy must be positive");
    }
    if (mode_cap < 1) {
        throw InvalidArgument("matsubara_correlator: mode_cap must be >= 1");
    }
    const double e2 = energy * energy;
    const double x = theta / beta;
    const double w1 = 2.0 * kPi / beta;
    const double cap = static_cast<double>(mode_cap);
    const double tail = 2.0 * e2 / beta / std::pow(w1, 4) / (3.0 * cap * cap * cap);
    if (tail > tolerance) {
        throw AccuracyError("matsubara_correlator: tail bound exceeds tolerance; raise mode_cap", tail);
    }
    // sum over n != 0 of e^{-i w theta} / w^2 is (beta/2) B_2(theta/beta)
    double remainder = 0.0;
    for (std::size_t n = mode_cap; n >= 1; --n) {
        const double w = w1 * static_cast<double>(n);
        const double w2 = w * w;
        remainder += 2.0 * std::cos(w * theta) * e2 / (w2 * (w2 + e2));
    }
    const double value = 1.0 / (beta * e2) + 0.5 * beta * (x * x - x + 1.0 / 6.0) - remainder / beta;
    return MatsubaraResult{{value, 0.0}, tail, mode_cap};
}

double thermal_oscillator_exact(double theta, double energy, double beta) {
    if (!(energy > 0.0) || !(beta > 0.0)) {
        throw InvalidArgument("thermal_oscillator_exact: energy and beta must be positive");
    }
    const double num = std::exp(-energy * theta) + std::exp(-energy * (beta - theta));
    return num / (2.0 * energy * -std::expm1(-beta * energy));
}

FoliationBogoliubov foliation_bogoliubov(const SpaceVector &p, const Foliation &fol_a, const Foliation &fol_b,
                                         double mass) {
    if (fol_a.dim() != fol_b.dim()) {
        throw InvalidArgument("foliation_bogoliubov: foliation dimensions differ");
    }
    const double ea = energy_Ep(p, fol_a, mass);
    const double eb = energy_Ep(p, fol_b, mass);
    if (!(ea > 0.0) || !(eb > 0.0)) {
        throw InvalidArgument("foliation_bogoliubov: mode energies must be positive");
    }
    // (phi, pi) in terms of (a(p), a^dagger(-p)) for a mode of energy E.
    auto modes = [](double e) {
        Eigen::Matrix2cd m;
        const double s = 1.0 / std::sqrt(2.0 * e);
        const double t = std::sqrt(e / 2.0);
        m << s, s, cplx(0.0, -t), cplx(0.0, t);
        return m;
    };
    const Eigen::Matrix2cd transfer = modes(eb).inverse() * modes(ea);
    return FoliationBogoliubov{transfer(0, 0).real(), transfer(0, 1).real()};
}

VacuumScaling vacuum_energy_scaling(const Foliation &fol, double scale, double mass, const MomentumGrid &grid) {
    if (!(scale > 0.0)) {
        throw InvalidArgument("vacuum_energy_scaling: scale must be positive");
    }
    if (grid.points < 2 || !(grid.cutoff > 0.0)) {
        throw InvalidArgument("vacuum_energy_scaling: grid needs >= 2 points and a positive cutoff");
    }
    const std::size_t dim = fol.dim();
    const Foliation scaled = fol.scaled(scale);
    const double h = 2.0 * grid.cutoff / static_cast<double>(grid.points - 1);
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        total *= grid.points;
    }
    double rho = 0.0;
    double rho_s = 0.0;
    SpaceVector p(static_cast<Eigen::Index>(dim));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t a = dim; a-- > 0;) {
            p(static_cast<Eigen::Index>(a)) = -grid.cutoff + h * static_cast<double>(rest % grid.points);
            rest /= grid.points;
        }
        rho += 0.5 * energy_Ep(p, fol, mass);
        rho_s += 0.5 * energy_Ep(p, scaled, mass);
    }
    return VacuumScaling{rho, rho_s, rho_s / rho};
}

P0Modes discrete_p0_modes(std::size_t slices, double step) {
    if (slices < 1) {
        throw InvalidArgument("discrete_p0_modes: need at least one slice");
    }
    if (!(step > 0.0)) {
        throw InvalidArgument("discrete_p0_modes: step must be positive");
    }
    const auto n = static_cast<Eigen::Index>(slices);
    const double total = step * static_cast<double>(slices);
    P0Modes out;
    Matrix f(n, n);
    Matrix phases = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double w = 2.0 * kPi * static_cast<double>(k) / total;
        out.frequencies.push_back(w);
        phases(k, k) = std::polar(1.0, step * w);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double angle = -2.0 * kPi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
        }
    }
    out.shift = f * phases * f.adjoint();
    Matrix perm = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        perm((j + 1) % n, j) = 1.0;
    }
    out.residual = (out.shift - perm).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace xtqm
