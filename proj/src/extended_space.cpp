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

#include "xtqm/extended_space.hpp"

#include <cmath>

#include "xtqm/errors.hpp"
#include "xtqm/numeric_policy.hpp"

namespace xtqm {

ExtendedSpace::ExtendedSpace(std::size_t local_dim, std::size_t slices, double step, std::size_t foliation_dim)
    : local_dim_(local_dim), slices_(slices), step_(step), foliation_dim_(foliation_dim) {
    if (local_dim_ < 2) {
        throw InvalidArgument("extended space: local dimension must be >= 2");
    }
    if (slices_ < 1) {
        throw InvalidArgument("extended space: need at least one slice");
    }
    if (foliation_dim_ < 1) {
        throw InvalidArgument("extended space: foliation register dimension must be >= 1");
    }
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
        throw InvalidArgument("extended space: step must be positive");
    }
    std::size_t total = foliation_dim_;
    for (std::size_t i = 0; i < slices_ && total <= policy().dimension_cap; ++i) {
        total *= local_dim_;
    }
    if (total > policy().dimension_cap) {
        throw ResourceError("extended space: d^N * K exceeds the dimension cap");
    }
}

Shape ExtendedSpace::slice_shape() const {
    return Shape(slices_, local_dim_);
}

Shape ExtendedSpace::shape() const {
    Shape s = slice_shape();
    if (has_register()) {
        s.push_back(foliation_dim_);
    }
    return s;
}

std::size_t ExtendedSpace::slice_dimension() const {
    return shape_size(slice_shape());
}

ExtendedSpace ExtendedSpace::without_register() const {
    return ExtendedSpace(local_dim_, slices_, step_, 1);
}

std::string to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::unitary:
            return "unitary";
        case ActionKind::time_dependent:
            return "time_dependent";
        case ActionKind::wick_rotated:
            return "wick_rotated";
        case ActionKind::controlled:
            return "controlled";
    }
    return "unknown";
}

namespace {

Operator slice_permutation(const ExtendedSpace &space) {
    const std::size_t d = space.local_dim();
    const std::size_t n = space.slices();
    const std::size_t dim = space.slice_dimension();
    // Moving the last digit to the front: out = last * d^(N-1) + in / d.
    std::size_t top = 1;
    for (std::size_t i = 1; i < n; ++i) {
        top *= d;
    }
    auto side = static_cast<Eigen::Index>(dim);
    Matrix m = Matrix::Zero(side, side);
    for (std::size_t in = 0; in < dim; ++in) {
        std::size_t last = in % d;
        std::size_t out = last * top + in / d;
        m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;
    }
    return Operator(std::move(m), space.slice_shape());
}

void check_local(const ExtendedSpace &space, const Operator &op, const char *what) {
    if (op.side() != space.local_dim()) {
        throw InvalidArgument(std::string(what) + ": operator side does not match local dimension");
    }
}

Operator slice_product(const ExtendedSpace &space, const std::vector<Operator> &locals) {
    std::vector<Operator> factors;
    factors.reserve(locals.size());
    for (const auto &u : locals) {
        factors.emplace_back(u.matrix(), Shape{space.local_dim()});
    }
    return tensor_product(factors);
}

DiscreteAction assemble(const ExtendedSpace &space, const std::vector<Operator> &unitaries, ActionKind kind,
                        std::vector<Operator> generators) {
    Operator shift = slice_permutation(space);
    Operator product = slice_product(space, unitaries);
    return DiscreteAction{space, shift * product, kind, std::move(generators), {}};
}

}  // namespace

Operator cyclic_shift(const ExtendedSpace &space) {
    Operator shift = slice_permutation(space);
    if (space.has_register()) {
        return tensor_product(shift, Operator::identity(Shape{space.foliation_dim()}));
    }
    return shift;
}

Operator embed_at_slice(const ExtendedSpace &space, const Operator &op, std::size_t slice) {
    check_local(space, op, "embed_at_slice");
    if (slice < 1 || slice > space.slices()) {
        throw InvalidArgument("embed_at_slice: slice " + std::to_string(slice) + " out of range");
    }
    const std::size_t d = space.local_dim();
    std::size_t before = 1;
    for (std::size_t i = 1; i < slice; ++i) {
        before *= d;
    }
    std::size_t after = 1;
    for (std::size_t i = slice; i < space.slices(); ++i) {
        after *= d;
    }
    after *= space.foliation_dim();

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(before * d * after),
                              static_cast<Eigen::Index>(before * d * after));
    const Matrix &a = op.matrix();
    for (std::size_t b = 0; b < before; ++b) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                cplx v = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (v == cplx(0.0, 0.0)) {
                    continue;
                }
                for (std::size_t r = 0; r < after; ++r) {
                    auto row = static_cast<Eigen::Index>((b * d + i) * after + r);
                    auto col = static_cast<Eigen::Index>((b * d + j) * after + r);
                    out(row, col) = v;
                }
            }
        }
    }
    return Operator(std::move(out), space.shape());
}

DiscreteAction build_action(const ExtendedSpace &space, const Operator &hamiltonian) {
    check_local(space, hamiltonian, "build_action");
    if (space.has_register()) {
        throw InvalidArgument("build_action: space has a foliation register; use build_controlled_action");
    }
    Operator u = matrix_exp(hamiltonian, cplx(0.0, -space.step()));
    std::vector<Operator> unitaries(space.slices(), u);
    std::vector<Operator> generators(space.slices(), hamiltonian);
    DiscreteAction action = assemble(space, unitaries, ActionKind::unitary, std::move(generators));
    if (!hamiltonian.is_hermitian(policy().equality)) {
        action.warnings.push_back("generator is not Hermitian; e^{iS} is not unitary");
    }
    return action;
}

DiscreteAction build_action_timedep(const ExtendedSpace &space, const std::vector<Operator> &hamiltonians) {
    if (hamiltonians.size() != space.slices()) {
        throw InvalidArgument("build_action_timedep: need one Hamiltonian per slice");
    }
    if (space.has_register()) {
        throw InvalidArgument("build_action_timedep: space has a foliation register");
    }
    std::vector<Operator> unitaries;
    unitaries.reserve(hamiltonians.size());
    DiscreteAction action{space, Operator::identity(space.shape()), ActionKind::time_dependent, hamiltonians, {}};
    for (const auto &h : hamiltonians) {
        check_local(space, h, "build_action_timedep");
        unitaries.push_back(matrix_exp(h, cplx(0.0, -space.step())));
        if (!h.is_hermitian(policy().equality)) {
            action.warnings.push_back("a slice generator is not Hermitian");
        }
    }
    action.matrix = assemble(space, unitaries, ActionKind::time_dependent, {}).matrix;
    return action;
}

DiscreteAction build_action_from_unitaries(const ExtendedSpace &space, const std::vector<Operator> &unitaries) {
    if (unitaries.size() != space.slices()) {
        throw InvalidArgument("build_action_from_unitaries: need one unitary per slice");
    }
    if (space.has_register()) {
        throw InvalidArgument("build_action_from_unitaries: space has a foliation register");
    }
    for (const auto &u : unitaries) {
        check_local(space, u, "build_action_from_unitaries");
    }
    return assemble(space, unitaries, ActionKind::time_dependent, {});
}

DiscreteAction build_action_wick(const ExtendedSpace &space, const Operator &hamiltonian) {
    check_local(space, hamiltonian, "build_action_wick");
    if (space.has_register()) {
        throw InvalidArgument("build_action_wick: space has a foliation register");
    }
    Operator v = matrix_exp(hamiltonian, cplx(-space.step(), 0.0));
    std::vector<Operator> factors(space.slices(), v);
    std::vector<Operator> generators(space.slices(), hamiltonian);
    DiscreteAction action = assemble(space, factors, ActionKind::wick_rotated, std::move(generators));
    if (!hamiltonian.is_hermitian(policy().equality)) {
        action.warnings.push_back("generator is not Hermitian");
    }
    return action;
}

DiscreteAction build_controlled_action(const ExtendedSpace &space, const std::vector<Operator> &family) {
    if (family.size() != space.foliation_dim()) {
        throw InvalidArgument("build_controlled_action: family size must equal the register dimension");
    }
    if (!space.has_register()) {
        DiscreteAction single = build_action(space, family.front());
        return single;
    }
    const ExtendedSpace bare = space.without_register();
    const auto k_dim = static_cast<Eigen::Index>(space.foliation_dim());
    const auto n = static_cast<Eigen::Index>(bare.slice_dimension());
    Matrix out = Matrix::Zero(n * k_dim, n * k_dim);
    std::vector<std::string> warnings;
    for (Eigen::Index k = 0; k < k_dim; ++k) {
        DiscreteAction branch = build_action(bare, family[static_cast<std::size_t>(k)]);
        for (const auto &w : branch.warnings) {
            warnings.push_back("branch " + std::to_string(k) + ": " + w);
        }
        const Matrix &b = branch.matrix.matrix();
        // Register is the least significant factor: row = slice_row * K + k.
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                out(r * k_dim + k, c * k_dim + k) = b(r, c);
            }
        }
    }
    return DiscreteAction{space, Operator(std::move(out), space.shape()), ActionKind::controlled, family,
                          std::move(warnings)};
}

DiscreteAction condition_on_register(const DiscreteAction &action, std::size_t k) {
    if (action.kind != ActionKind::controlled) {
        throw InvalidArgument("condition_on_register: action is not controlled");
    }
    const ExtendedSpace &space = action.space;
    if (k >= space.foliation_dim()) {
        throw InvalidArgument("condition_on_register: branch index out of range");
    }
    const ExtendedSpace bare = space.without_register();
    const auto k_dim = static_cast<Eigen::Index>(space.foliation_dim());
    const auto n = static_cast<Eigen::Index>(bare.slice_dimension());
    const auto kk = static_cast<Eigen::Index>(k);
    Matrix block(n, n);
    const Matrix &m = action.matrix.matrix();
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            block(r, c) = m(r * k_dim + kk, c * k_dim + kk);
        }
    }
    return DiscreteAction{bare, Operator(std::move(block), bare.shape()), ActionKind::unitary,
                          std::vector<Operator>(bare.slices(), action.slice_hamiltonians[k]), {}};
}

}  // namespace xtqm
