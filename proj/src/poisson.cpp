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

#include "xtqm/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "xtqm/errors.hpp"

namespace xtqm {

namespace {

using Triplet = Eigen::Triplet<double>;

Eigen::Index idx(std::size_t v) {
    return static_cast<Eigen::Index>(v);
}

// Central difference matrices over sites; time rows without a stencil stay zero.
SparseMatrix time_difference(const LatticeGeometry &g) {
    std::vector<Triplet> t;
    for (std::size_t i = 1; i + 1 < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            t.emplace_back(idx(g.site(i, j)), idx(g.site(i + 1, j)), 0.5 / g.dt());
            t.emplace_back(idx(g.site(i, j)), idx(g.site(i - 1, j)), -0.5 / g.dt());
        }
    }
    SparseMatrix d(idx(g.sites()), idx(g.sites()));
    d.setFromTriplets(t.begin(), t.end());
    return d;
}

SparseMatrix space_difference(const LatticeGeometry &g) {
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            t.emplace_back(idx(g.site(i, j)), idx(g.site(i, (j + 1) % g.nx())), 0.5 / g.dx());
            t.emplace_back(idx(g.site(i, j)), idx(g.site(i, (j + g.nx() - 1) % g.nx())), -0.5 / g.dx());
        }
    }
    SparseMatrix d(idx(g.sites()), idx(g.sites()));
    d.setFromTriplets(t.begin(), t.end());
    return d;
}

// Rows with a time stencil.
SparseMatrix interior_mask(const LatticeGeometry &g) {
    std::vector<Triplet> t;
    for (std::size_t i = 1; i + 1 < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            t.emplace_back(idx(g.site(i, j)), idx(g.site(i, j)), 1.0);
        }
    }
    SparseMatrix m(idx(g.sites()), idx(g.sites()));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// Phase-space matrix [[pp, pq], [qp, qq]] over (phi, pi) blocks.
SparseMatrix blocks(const SparseMatrix &pp, const SparseMatrix &pq, const SparseMatrix &qp, const SparseMatrix &qq) {
    const Eigen::Index n = pp.rows();
    std::vector<Triplet> t;
    auto add = [&](const SparseMatrix &m, Eigen::Index r0, Eigen::Index c0) {
        for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
                t.emplace_back(r0 + it.row(), c0 + it.col(), it.value());
            }
        }
    };
    add(pp, 0, 0);
    add(pq, 0, n);
    add(qp, n, 0);
    add(qq, n, n);
    SparseMatrix out(2 * n, 2 * n);
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

// pi^T M phi as a symmetric phase-space quadratic form.
SparseMatrix pi_times(const SparseMatrix &m) {
    const SparseMatrix mt = m.transpose();
    SparseMatrix z(m.rows(), m.cols());
    return blocks(z, mt, m, z);
}

void require_same(const QuadraticFunctional &f, const QuadraticFunctional &g) {
    if (!f.geometry().same_as(g.geometry())) {
        throw InvalidArgument("quadratic functional: geometries differ");
    }
}

void require_lab(const LatticeGeometry &g) {
    if (g.time_axis()(0) != 1.0 || g.time_axis()(1) != 0.0) {
        throw InvalidArgument("poisson: generators need a lab-aligned grid");
    }
}

}  // namespace

QuadraticFunctional::QuadraticFunctional(LatticeGeometry geometry, SparseMatrix a, Eigen::VectorXd b, double c)
    : geometry_(std::move(geometry)), b_(std::move(b)), c_(c) {
    const auto n = idx(2 * geometry_.sites());
    if (a.rows() != n || a.cols() != n || b_.size() != n) {
        throw InvalidArgument("quadratic functional: dimension does not match 2 x sites");
    }
    const SparseMatrix at = a.transpose();
    a_ = 0.5 * (a + at);
    a_.prune(0.0);
}

QuadraticFunctional QuadraticFunctional::phi_at(const LatticeGeometry &g, std::size_t i, std::size_t j) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(idx(2 * g.sites()));
    b(idx(g.site(i, j))) = 1.0;
    return QuadraticFunctional(g, SparseMatrix(b.size(), b.size()), b);
}

QuadraticFunctional QuadraticFunctional::pi_at(const LatticeGeometry &g, std::size_t i, std::size_t j) {
    Eigen::VectorXd b = Eigen::VectorXd::Zero(idx(2 * g.sites()));
    b(idx(g.sites() + g.site(i, j))) = 1.0;
    return QuadraticFunctional(g, SparseMatrix(b.size(), b.size()), b);
}

QuadraticFunctional QuadraticFunctional::zero(const LatticeGeometry &g) {
    const auto n = idx(2 * g.sites());
    return QuadraticFunctional(g, SparseMatrix(n, n), Eigen::VectorXd::Zero(n));
}

double QuadraticFunctional::evaluate(const Eigen::VectorXd &z) const {
    if (z.size() != b_.size()) {
        throw InvalidArgument("quadratic functional: point has the wrong size");
    }
    return 0.5 * z.dot(a_ * z) + b_.dot(z) + c_;
}

Eigen::VectorXd QuadraticFunctional::gradient(const Eigen::VectorXd &z) const {
    if (z.size() != b_.size()) {
        throw InvalidArgument("quadratic functional: point has the wrong size");
    }
    return a_ * z + b_;
}

QuadraticFunctional QuadraticFunctional::operator+(const QuadraticFunctional &o) const {
    require_same(*this, o);
    return QuadraticFunctional(geometry_, a_ + o.a_, b_ + o.b_, c_ + o.c_);
}

QuadraticFunctional QuadraticFunctional::operator-(const QuadraticFunctional &o) const {
    require_same(*this, o);
    return QuadraticFunctional(geometry_, a_ - o.a_, b_ - o.b_, c_ - o.c_);
}

QuadraticFunctional QuadraticFunctional::operator*(double s) const {
    return QuadraticFunctional(geometry_, s * a_, s * b_, s * c_);
}

double QuadraticFunctional::coefficient_norm() const {
    double worst = std::abs(c_);
    if (b_.size() > 0) {
        worst = std::max(worst, b_.cwiseAbs().maxCoeff());
    }
    for (Eigen::Index k = 0; k < a_.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(a_, k); it; ++it) {
            worst = std::max(worst, std::abs(it.value()));
        }
    }
    return worst;
}

Eigen::VectorXd phase_point(const LatticeField &field) {
    const auto &g = field.geometry();
    Eigen::VectorXd z(idx(2 * g.sites()));
    for (std::size_t i = 0; i < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            z(idx(g.site(i, j))) = field.phi()(idx(i), idx(j));
            z(idx(g.sites() + g.site(i, j))) = field.pi()(idx(i), idx(j));
        }
    }
    return z;
}

SparseMatrix symplectic_form(const LatticeGeometry &g) {
    const double w = 1.0 / (g.dt() * g.dx());
    std::vector<Triplet> t;
    const auto n = idx(g.sites());
    for (Eigen::Index s = 0; s < n; ++s) {
        t.emplace_back(s, n + s, w);
        t.emplace_back(n + s, s, -w);
    }
    SparseMatrix omega(2 * n, 2 * n);
    omega.setFromTriplets(t.begin(), t.end());
    return omega;
}

QuadraticFunctional extended_pb(const QuadraticFunctional &f, const QuadraticFunctional &g) {
    require_same(f, g);
    const SparseMatrix omega = symplectic_form(f.geometry());
    const SparseMatrix &a = f.quadratic();
    const SparseMatrix &b = g.quadratic();
    const SparseMatrix a_omega = a * omega;
    const SparseMatrix b_omega = b * omega;
    // (Az + b)^T Omega (Bz + c): the quadratic part A Omega B - B Omega A is already symmetric.
    SparseMatrix quad = a_omega * b - b_omega * a;
    const Eigen::VectorXd lin = a_omega * g.linear() - b_omega * f.linear();
    const double c = f.linear().dot(omega * g.linear());
    return QuadraticFunctional(f.geometry(), std::move(quad), lin, c);
}

QuadraticFunctional p0_generator(const LatticeGeometry &g, const Foliation &fol) {
    require_lab(g);
    if (fol.dim() != 2) {
        throw InvalidArgument("p0_generator: 1+1 dimensions only");
    }
    const SparseMatrix dn = fol.n()(0) * time_difference(g) + fol.n()(1) * interior_mask(g) * space_difference(g);
    const auto n = idx(2 * g.sites());
    return QuadraticFunctional(g, g.dt() * g.dx() * pi_times(dn), Eigen::VectorXd::Zero(n));
}

QuadraticFunctional boost_generator(const LatticeGeometry &g) {
    require_lab(g);
    std::vector<Triplet> tt;
    std::vector<Triplet> xx;
    for (std::size_t i = 0; i < g.nt(); ++i) {
        for (std::size_t j = 0; j < g.nx(); ++j) {
            tt.emplace_back(idx(g.site(i, j)), idx(g.site(i, j)), g.t(i));
            xx.emplace_back(idx(g.site(i, j)), idx(g.site(i, j)), g.x(j));
        }
    }
    SparseMatrix t_diag(idx(g.sites()), idx(g.sites()));
    SparseMatrix x_diag(idx(g.sites()), idx(g.sites()));
    t_diag.setFromTriplets(tt.begin(), tt.end());
    x_diag.setFromTriplets(xx.begin(), xx.end());
    const SparseMatrix k = interior_mask(g) * (t_diag * space_difference(g)) + x_diag * time_difference(g);
    const auto n = idx(2 * g.sites());
    return QuadraticFunctional(g, g.dt() * g.dx() * pi_times(k), Eigen::VectorXd::Zero(n));
}

QuadraticFunctional free_action(const LatticeGeometry &g, const Foliation &fol, double mass) {
    require_lab(g);
    if (fol.dim() != 2) {
        throw InvalidArgument("free_action: 1+1 dimensions only");
    }
    const SparseMatrix mask = interior_mask(g);
    const SparseMatrix d0 = time_difference(g);
    const SparseMatrix d1 = mask * space_difference(g);
    const Eigen::Vector2d n = fol.n();
    const double nn = fol.norm2();
    const SparseMatrix dn = n(0) * d0 + n(1) * d1;

    // (n n / ||n||^2 - eta)^{mu nu} d_mu phi d_nu phi
    const double p00 = n(0) * n(0) / nn - 1.0;
    const double p01 = n(0) * n(1) / nn;
    const double p11 = n(1) * n(1) / nn + 1.0;
    const SparseMatrix d0t = d0.transpose();
    const SparseMatrix d1t = d1.transpose();
    const SparseMatrix grad = p00 * (d0t * d0) + p01 * (d0t * d1 + d1t * d0) + p11 * (d1t * d1);
    const SparseMatrix phi_phi = -grad - mass * mass * mask;
    const SparseMatrix pi_pi = -nn * mask;
    const SparseMatrix dnt = SparseMatrix(dn.transpose());
    const SparseMatrix a = blocks(phi_phi, dnt, dn, pi_pi);
    const auto size = idx(2 * g.sites());
    return QuadraticFunctional(g, g.dt() * g.dx() * a, Eigen::VectorXd::Zero(size));
}

QuadraticFunctional action_foliation_derivative(const LatticeGeometry &g, const Foliation &fol, double mass,
                                                double h) {
    if (!(h > 0.0)) {
        throw InvalidArgument("action_foliation_derivative: step must be positive");
    }
    auto moved = [&](double eta) {
        // exp(-eta K) n with K = [[0, 1], [1, 0]]
        const double c = std::cosh(eta);
        const double s = std::sinh(eta);
        SpaceVector v(2);
        v << c * fol.n()(0) - s * fol.n()(1), c * fol.n()(1) - s * fol.n()(0);
        return Foliation(v);
    };
    return (free_action(g, moved(h), mass) - free_action(g, moved(-h), mass)) * (0.5 / h);
}

}  // namespace xtqm
