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

#include "xtqm/classical_lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "xtqm/errors.hpp"

namespace xtqm {

namespace {

SpaceVector vec2(double a, double b) {
    SpaceVector v(2);
    v << a, b;
    return v;
}

std::size_t wrap(long j, std::size_t n) {
    const long m = static_cast<long>(n);
    return static_cast<std::size_t>(((j % m) + m) % m);
}

double potential_slope(double phi, double lambda) {
    return lambda * phi * phi * phi / 6.0;
}

double potential(double phi, double lambda) {
    return lambda * phi * phi * phi * phi / 24.0;
}

// n^mu n^nu / ||n||^2 - eta^{mu nu}
Eigen::Matrix2d projector(const Foliation &fol) {
    if (fol.dim() != 2) {
        throw InvalidArgument("classical lattice: 1+1 dimensions only");
    }
    const Eigen::Vector2d n = fol.n();
    Eigen::Matrix2d p = n * n.transpose() / fol.norm2();
    p(0, 0) -= 1.0;
    p(1, 1) += 1.0;
    return p;
}

Eigen::Vector2d lower(const SpaceVector &v) {
    return {v(0), -v(1)};
}

// Grid-axis derivatives (d_t', d_x') at (i, j).
Eigen::Vector2d grid_gradient(const Eigen::MatrixXd &f, const LatticeGeometry &g, std::size_t i, std::size_t j,
                              StencilOrder order) {
    const std::size_t reach = order == StencilOrder::second ? 1 : 2;
    if (i < reach || i + reach >= g.nt()) {
        throw InvalidArgument("classical lattice: row " + std::to_string(i) + " has no full time stencil");
    }
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    const long jl = static_cast<long>(j);
    auto col = [&](long k) { return static_cast<Eigen::Index>(wrap(jl + k, g.nx())); };
    if (order == StencilOrder::second) {
        return {(f(r + 1, c) - f(r - 1, c)) / (2.0 * g.dt()), (f(r, col(1)) - f(r, col(-1))) / (2.0 * g.dx())};
    }
    const double dt = (-f(r + 2, c) + 8.0 * f(r + 1, c) - 8.0 * f(r - 1, c) + f(r - 2, c)) / (12.0 * g.dt());
    const double dx =
        (-f(r, col(2)) + 8.0 * f(r, col(1)) - 8.0 * f(r, col(-1)) + f(r, col(-2))) / (12.0 * g.dx());
    return {dt, dx};
}

// Lower-index lab components from grid-axis components.
Eigen::Vector2d to_lab(const Eigen::Vector2d &grid, const LatticeGeometry &g) {
    return lower(g.time_axis()) * grid(0) - lower(g.space_axis()) * grid(1);
}

// Lower-index lab Hessian d_mu d_nu f at interior (i, j).
Eigen::Matrix2d lab_hessian(const Eigen::MatrixXd &f, const LatticeGeometry &g, std::size_t i, std::size_t j) {
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    const auto cp = static_cast<Eigen::Index>(wrap(static_cast<long>(j) + 1, g.nx()));
    const auto cm = static_cast<Eigen::Index>(wrap(static_cast<long>(j) - 1, g.nx()));
    const double dtt = (f(r + 1, c) - 2.0 * f(r, c) + f(r - 1, c)) / (g.dt() * g.dt());
    const double dxx = (f(r, cp) - 2.0 * f(r, c) + f(r, cm)) / (g.dx() * g.dx());
    const double dtx = (f(r + 1, cp) - f(r + 1, cm) - f(r - 1, cp) + f(r - 1, cm)) / (4.0 * g.dt() * g.dx());
    const Eigen::Vector2d u = lower(g.time_axis());
    const Eigen::Vector2d e = lower(g.space_axis());
    return u * u.transpose() * dtt - (u * e.transpose() + e * u.transpose()) * dtx + e * e.transpose() * dxx;
}

double density_from_gradient(double phi, double pi, const Eigen::Vector2d &grad, const Foliation &fol, double mass,
                             double lambda) {
    const double kinetic = 0.5 * grad.dot(projector(fol) * grad);
    return 0.5 * fol.norm2() * pi * pi + kinetic + 0.5 * mass * mass * phi * phi + potential(phi, lambda);
}

void require_interior(const LatticeGeometry &g) {
    if (g.nt() < 3) {
        throw InvalidArgument("classical lattice: need at least three time rows");
    }
}

std::array<double, 4> lagrange_weights(double s) {
    return {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
            -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
}

// phi at a lab point by 4x4 Lagrange interpolation; nullopt when the time support leaves the block.
std::optional<double> interpolate(const Eigen::MatrixXd &f, const LatticeGeometry &g, const SpaceVector &point) {
    const double u = (point(0) - g.t0()) / g.dt();
    const double v = (point(1) - g.x0()) / g.dx();
    const double ui = std::floor(u);
    const double vi = std::floor(v);
    const long i0 = static_cast<long>(ui);
    if (i0 - 1 < 0 || i0 + 2 >= static_cast<long>(g.nt())) {
        return std::nullopt;
    }
    const auto wt = lagrange_weights(u - ui);
    const auto wx = lagrange_weights(v - vi);
    const long j0 = static_cast<long>(vi);
    double total = 0.0;
    for (long a = 0; a < 4; ++a) {
        double row = 0.0;
        for (long b = 0; b < 4; ++b) {
            row += wx[static_cast<std::size_t>(b)] *
                   f(static_cast<Eigen::Index>(i0 - 1 + a), static_cast<Eigen::Index>(wrap(j0 - 1 + b, g.nx())));
        }
        total += wt[static_cast<std::size_t>(a)] * row;
    }
    return total;
}

}  // namespace

LatticeGeometry::LatticeGeometry(std::size_t nt, std::size_t nx, double dt, double dx, double t0, double x0)
    : LatticeGeometry(nt, nx, dt, dx, t0, x0, Foliation::canonical(2)) {
}

LatticeGeometry::LatticeGeometry(std::size_t nt, std::size_t nx, double dt, double dx, double t0, double x0,
                                 const Foliation &axes)
    : nt_(nt), nx_(nx), dt_(dt), dx_(dx), t0_(t0), x0_(x0) {
    if (nt == 0 || nx < 5) {
        throw InvalidArgument("lattice: need nt >= 1 and nx >= 5");
    }
    if (!(dt > 0.0) || !(dx > 0.0) || !std::isfinite(dt) || !std::isfinite(dx)) {
        throw InvalidArgument("lattice: spacings must be positive and finite");
    }
    if (axes.dim() != 2) {
        throw InvalidArgument("lattice: 1+1 dimensions only");
    }
    time_axis_ = axes.n() / axes.norm();
    space_axis_ = axes.frame()[0] / axes.norm();
}

SpaceVector LatticeGeometry::lab_point(double t, double x) const {
    return t * time_axis_ + x * space_axis_;
}

bool LatticeGeometry::same_as(const LatticeGeometry &o) const {
    return nt_ == o.nt_ && nx_ == o.nx_ && dt_ == o.dt_ && dx_ == o.dx_ && t0_ == o.t0_ && x0_ == o.x0_ &&
           time_axis_ == o.time_axis_;
}

LatticeField::LatticeField(LatticeGeometry geometry, Eigen::MatrixXd phi, Eigen::MatrixXd pi, double lambda_pot)
    : geometry_(std::move(geometry)), phi_(std::move(phi)), pi_(std::move(pi)), lambda_pot_(lambda_pot) {
    const auto rows = static_cast<Eigen::Index>(geometry_.nt());
    const auto cols = static_cast<Eigen::Index>(geometry_.nx());
    if (phi_.rows() != rows || phi_.cols() != cols || pi_.rows() != rows || pi_.cols() != cols) {
        throw InvalidArgument("lattice field: array shape does not match the geometry");
    }
    if (!phi_.allFinite() || !pi_.allFinite()) {
        throw InvalidArgument("lattice field: non-finite values");
    }
    if (lambda_pot < 0.0) {
        throw InvalidArgument("lattice field: negative quartic coupling");
    }
}

LatticeField LatticeField::sample(const LatticeGeometry &g, const Sampler &phi, const Sampler &pi,
                                  double lambda_pot) {
    Eigen::MatrixXd a(g.nt(), g.nx());
    Eigen::MatrixXd b(g.nt(), g.nx());
    for (std::size_t i = 0; i < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const SpaceVector x = g.lab_point(g.t(i), g.x(j));
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = phi(x);
            b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pi(x);
        }
    }
    return LatticeField(g, std::move(a), std::move(b), lambda_pot);
}

Eigen::Vector2d lab_gradient(const Eigen::MatrixXd &f, const LatticeGeometry &g, std::size_t i, std::size_t j,
                             StencilOrder order) {
    return to_lab(grid_gradient(f, g, i, j, order), g);
}

double hamiltonian_density(const LatticeField &field, const Foliation &fol, double mass, std::size_t i,
                           std::size_t j, StencilOrder order) {
    const auto &g = field.geometry();
    const Eigen::Vector2d grad = lab_gradient(field.phi(), g, i, j, order);
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    return density_from_gradient(field.phi()(r, c), field.pi()(r, c), grad, fol, mass, field.lambda_pot());
}

double stress_energy_density(const LatticeField &field, const Foliation &fol, double mass, std::size_t i,
                             std::size_t j) {
    const auto &g = field.geometry();
    const Eigen::Vector2d d = lab_gradient(field.phi(), g, i, j);
    const double phi = field.phi()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    // Raise with eta: d^mu = (d_0, -d_1).
    const double dd = d(0) * d(0) - d(1) * d(1);
    const double lagrangian = 0.5 * dd - 0.5 * mass * mass * phi * phi - potential(phi, field.lambda_pot());
    const double n_dot = fol.n()(0) * d(0) + fol.n()(1) * d(1);
    return (n_dot * n_dot - fol.norm2() * lagrangian) / fol.norm2();
}

HamiltonRhs hamilton_rhs(const LatticeField &field, const Foliation &fol, double mass) {
    const auto &g = field.geometry();
    require_interior(g);
    const Eigen::Matrix2d p = projector(fol);
    const auto rows = static_cast<Eigen::Index>(g.nt() - 2);
    const auto cols = static_cast<Eigen::Index>(g.nx());
    HamiltonRhs out{Eigen::MatrixXd(rows, cols), Eigen::MatrixXd(rows, cols)};
    for (std::size_t i = 1; i + 1 < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(j);
            const double phi = field.phi()(r, c);
            const double lap = (p.array() * lab_hessian(field.phi(), g, i, j).array()).sum();
            out.dpi_along_n(r - 1, c) = lap - mass * mass * phi - potential_slope(phi, field.lambda_pot());
            out.dphi_along_n(r - 1, c) = fol.norm2() * field.pi()(r, c);
        }
    }
    return out;
}

double ConstraintResidual::max_abs() const {
    return std::max(pi_equation.cwiseAbs().maxCoeff(), phi_equation.cwiseAbs().maxCoeff());
}

ConstraintResidual physical_constraint_residual(const LatticeField &field, const Foliation &fol, double mass) {
    const auto &g = field.geometry();
    const HamiltonRhs rhs = hamilton_rhs(field, fol, mass);
    const Eigen::Vector2d n = fol.n();
    ConstraintResidual out{rhs.dpi_along_n, rhs.dphi_along_n};
    for (std::size_t i = 1; i + 1 < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const auto r = static_cast<Eigen::Index>(i - 1);
            const auto c = static_cast<Eigen::Index>(j);
            out.pi_equation(r, c) = n.dot(lab_gradient(field.pi(), g, i, j)) - rhs.dpi_along_n(r, c);
            out.phi_equation(r, c) = n.dot(lab_gradient(field.phi(), g, i, j)) - rhs.dphi_along_n(r, c);
        }
    }
    return out;
}

Eigen::MatrixXd kg_residual(const LatticeField &field, double mass) {
    const auto &g = field.geometry();
    require_interior(g);
    const Eigen::MatrixXd &f = field.phi();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(g.nt() - 2), static_cast<Eigen::Index>(g.nx()));
    for (std::size_t i = 1; i + 1 < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(j);
            const auto cp = static_cast<Eigen::Index>(wrap(static_cast<long>(j) + 1, g.nx()));
            const auto cm = static_cast<Eigen::Index>(wrap(static_cast<long>(j) - 1, g.nx()));
            const double dtt = (f(r + 1, c) - 2.0 * f(r, c) + f(r - 1, c)) / (g.dt() * g.dt());
            const double dxx = (f(r, cp) - 2.0 * f(r, c) + f(r, cm)) / (g.dx() * g.dx());
            out(r - 1, c) = dtt - dxx + mass * mass * f(r, c) + potential_slope(f(r, c), field.lambda_pot());
        }
    }
    return out;
}

LatticeField evolve_along_n(const Eigen::VectorXd &phi0, const Eigen::VectorXd &pi0, double dx, const Foliation &fol,
                            const EvolutionOptions &opt) {
    if (fol.dim() != 2) {
        throw InvalidArgument("evolve_along_n: 1+1 dimensions only");
    }
    if (phi0.size() != pi0.size() || phi0.size() < 5) {
        throw InvalidArgument("evolve_along_n: initial data need matching sizes of at least 5");
    }
    if (!(opt.dt > 0.0) || opt.steps == 0) {
        throw InvalidArgument("evolve_along_n: need dt > 0 and at least one step");
    }
    const auto nx = static_cast<std::size_t>(phi0.size());
    const LatticeGeometry g(opt.steps + 1, nx, opt.dt, dx, 0.0, 0.0, Foliation(fol.n() / fol.norm()));
    const double norm = fol.norm();
    const double m2 = opt.mass * opt.mass;
    const auto n = static_cast<Eigen::Index>(nx);

    auto force = [&](const Eigen::VectorXd &phi) {
        Eigen::VectorXd f(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double lap = (phi((j + 1) % n) - 2.0 * phi(j) + phi((j + n - 1) % n)) / (dx * dx);
            f(j) = (lap - m2 * phi(j) - potential_slope(phi(j), opt.lambda_pot)) / norm;
        }
        return f;
    };

    Eigen::MatrixXd phi(g.nt(), nx);
    Eigen::MatrixXd pi(g.nt(), nx);
    phi.row(0) = phi0.transpose();
    pi.row(0) = pi0.transpose();
    const double scale = std::max(phi0.cwiseAbs().maxCoeff(), pi0.cwiseAbs().maxCoeff());
    const double limit = opt.growth_limit * (scale > 0.0 ? scale : 1.0);

    Eigen::VectorXd p = phi0;
    Eigen::VectorXd q = pi0;
    Eigen::VectorXd f = force(p);
    for (std::size_t step = 1; step <= opt.steps; ++step) {
        q += 0.5 * opt.dt * f;
        p += opt.dt * norm * q;
        f = force(p);
        q += 0.5 * opt.dt * f;
        if (!p.allFinite() || !q.allFinite() || p.cwiseAbs().maxCoeff() > limit || q.cwiseAbs().maxCoeff() > limit) {
            throw StabilityError("evolve_along_n: solution grew past the limit at step " + std::to_string(step) +
                                 " (dt/dx = " + std::to_string(opt.dt / dx) + ")");
        }
        phi.row(static_cast<Eigen::Index>(step)) = p.transpose();
        pi.row(static_cast<Eigen::Index>(step)) = q.transpose();
    }
    return LatticeField(g, std::move(phi), std::move(pi), opt.lambda_pot);
}

std::vector<double> frame_energy(const LatticeField &field, const Foliation &fol, double mass) {
    const auto &g = field.geometry();
    if ((g.time_axis() - fol.n() / fol.norm()).norm() > 1e-12) {
        throw InvalidArgument("frame_energy: grid axes do not follow the foliation");
    }
    const auto n = static_cast<Eigen::Index>(g.nx());
    std::vector<double> out;
    for (Eigen::Index r = 0; r < field.phi().rows(); ++r) {
        double e = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double phi = field.phi()(r, j);
            const double grad = (field.phi()(r, (j + 1) % n) - phi) / g.dx();
            const double pi = field.pi()(r, j);
            e += 0.5 * fol.norm2() * pi * pi + 0.5 * grad * grad + 0.5 * mass * mass * phi * phi +
                 potential(phi, field.lambda_pot());
        }
        out.push_back(e * g.dx());
    }
    return out;
}

ScalarCovarianceReport scalar_covariance_check(const LatticeField &field, const BoostMatrix &boost,
                                               const Foliation &fol, double mass,
                                               const std::vector<std::pair<std::size_t, std::size_t>> &probes) {
    const auto &g = field.geometry();
    if (boost.dim() != 2 || fol.dim() != 2) {
        throw InvalidArgument("scalar_covariance_check: 1+1 dimensions only");
    }
    if ((g.time_axis() - vec2(1.0, 0.0)).norm() > 0.0) {
        throw InvalidArgument("scalar_covariance_check: needs a lab-aligned grid");
    }
    const Eigen::MatrixXd inv = boost.inverse().matrix();
    const Foliation moved = boost.apply(fol);
    const std::array<double, 2> step{g.dt(), g.dx()};

    // H' at Lambda x with phi'(y) = phi(Lambda^{-1} y); nullopt when a stencil point leaves the block.
    auto transformed = [&](std::size_t i, std::size_t j) -> std::optional<double> {
        if (i < 2 || i + 2 >= g.nt()) {
            return std::nullopt;
        }
        const SpaceVector x = g.lab_point(g.t(i), g.x(j));
        Eigen::Vector2d grad;
        for (Eigen::Index mu = 0; mu < 2; ++mu) {
            const SpaceVector dir = inv.col(mu) * step[static_cast<std::size_t>(mu)];
            std::array<double, 4> v{};
            const std::array<double, 4> k{-2.0, -1.0, 1.0, 2.0};
            for (std::size_t a = 0; a < 4; ++a) {
                const auto value = interpolate(field.phi(), g, x + k[a] * dir);
                if (!value) {
                    return std::nullopt;
                }
                v[a] = *value;
            }
            grad(mu) = (v[0] - 8.0 * v[1] + 8.0 * v[2] - v[3]) / (12.0 * step[static_cast<std::size_t>(mu)]);
        }
        const auto r = static_cast<Eigen::Index>(i);
        const auto c = static_cast<Eigen::Index>(j);
        return density_from_gradient(field.phi()(r, c), field.pi()(r, c), grad, moved, mass, field.lambda_pot());
    };

    ScalarCovarianceReport out;
    auto visit = [&](std::size_t i, std::size_t j, bool required) {
        const auto h_moved = transformed(i, j);
        if (!h_moved) {
            if (required) {
                throw InvalidArgument("scalar_covariance_check: probe (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ") leaves the block after the boost");
            }
            return;
        }
        const double h = hamiltonian_density(field, fol, mass, i, j, StencilOrder::fourth);
        out.max_deviation = std::max(out.max_deviation, std::abs(*h_moved - h));
        ++out.probes;
    };
    if (probes.empty()) {
        for (std::size_t i = 0; i < g.nt(); ++i) {
            for (std::size_t j = 0; j < g.nx(); ++j) {
                visit(i, j, false);
            }
        }
    } else {
        for (const auto &[i, j] : probes) {
            if (i >= g.nt() || j >= g.nx()) {
                throw InvalidArgument("scalar_covariance_check: probe outside the grid");
            }
            visit(i, j, true);
        }
    }
    if (out.probes == 0) {
        throw InvalidArgument("scalar_covariance_check: no probe has a full stencil inside the block");
    }
    return out;
}

}  // namespace xtqm
