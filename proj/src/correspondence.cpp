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

#include "xtqm/correspondence.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "xtqm/errors.hpp"
#include "xtqm/numeric_policy.hpp"
#include "xtqm/parallel.hpp"
#include "xtqm/random.hpp"

namespace xtqm {

InsertionList::InsertionList(std::initializer_list<Insertion> items) {
    for (const auto &item : items) {
        add(item.slice, item.op);
    }
}

void InsertionList::add(std::size_t slice, Operator op) {
    if (slice < 1) {
        throw InvalidArgument("insertion slices are 1-based");
    }
    if (!items_.empty() && slice <= items_.back().slice) {
        throw InvalidArgument("insertion slices must be strictly increasing");
    }
    items_.push_back(Insertion{slice, std::move(op)});
}

const Operator *InsertionList::at(std::size_t slice) const {
    for (const auto &item : items_) {
        if (item.slice == slice) {
            return &item.op;
        }
    }
    return nullptr;
}

InsertionList InsertionList::shifted(std::size_t shift, std::size_t slices) const {
    std::vector<Insertion> moved;
    for (const auto &item : items_) {
        std::size_t s = (item.slice - 1 + shift) % slices + 1;
        moved.push_back(Insertion{s, item.op});
    }
    std::sort(moved.begin(), moved.end(), [](const Insertion &a, const Insertion &b) { return a.slice < b.slice; });
    InsertionList out;
    for (auto &item : moved) {
        out.add(item.slice, std::move(item.op));
    }
    return out;
}

namespace {

void check_insertions(const InsertionList &insertions, std::size_t local_dim, std::size_t slices) {
    for (const auto &item : insertions.items()) {
        if (item.slice > slices) {
            throw InvalidArgument("insertion slice " + std::to_string(item.slice) + " out of range");
        }
        if (item.op.side() != local_dim) {
            throw InvalidArgument("insertion operator side does not match local dimension");
        }
    }
}

void check_initial(const StateVector &psi, std::size_t local_dim) {
    if (psi.size() != local_dim) {
        throw InvalidArgument("initial state length does not match local dimension");
    }
    if (std::abs(psi.norm() - 1.0) > policy().unit_norm) {
        throw InvalidArgument("initial state must have unit norm");
    }
}

/// (x)_i O_i over all slices (identity where nothing is inserted), times I on the register.
Matrix insertion_product(const ExtendedSpace &space, const InsertionList &insertions) {
    std::vector<Operator> factors;
    const Operator id = Operator::identity(Shape{space.local_dim()});
    for (std::size_t s = 1; s <= space.slices(); ++s) {
        const Operator *op = insertions.at(s);
        factors.push_back(op ? Operator(op->matrix(), Shape{space.local_dim()}) : id);
    }
    if (space.has_register()) {
        factors.push_back(Operator::identity(Shape{space.foliation_dim()}));
    }
    return tensor_product(factors).matrix();
}

/// Tr[A B] without forming the product.
cplx trace_of_product(const Matrix &a, const Matrix &b) {
    return a.transpose().cwiseProduct(b).sum();
}

Matrix propagator(const Operator &h, double step) {
    // Pade scaling-and-squaring, a different algorithm from matrix_exp's spectral path.
    Matrix generator = cplx(0.0, -step) * h.matrix();
    return generator.exp();
}

}  // namespace

cplx extended_correlator(const DiscreteAction &action, const InsertionList &insertions,
                         const std::optional<StateVector> &initial) {
    const ExtendedSpace &space = action.space;
    check_insertions(insertions, space.local_dim(), space.slices());
    Matrix y = action.matrix.matrix() * insertion_product(space, insertions);
    if (!initial) {
        return y.trace();
    }
    check_initial(*initial, space.local_dim());
    Operator p = embed_at_slice(space, initial->projector(), 1);
    return trace_of_product(p.matrix(), y);
}

cplx normalized_correlator(const DiscreteAction &action, const InsertionList &insertions) {
    cplx norm = action.matrix.trace();
    if (std::abs(norm) < policy().degenerate_normalization) {
        throw DegenerateNormalization("normalized correlator: |Tr e^{iS}| below threshold");
    }
    return extended_correlator(action, insertions) / norm;
}

cplx heisenberg_oracle(const Operator &hamiltonian, const StateVector &psi, const InsertionList &insertions,
                       double step, std::size_t slices) {
    std::vector<Operator> hs(slices, hamiltonian);
    return heisenberg_oracle(hs, psi, insertions, step);
}

cplx heisenberg_oracle(const std::vector<Operator> &hamiltonians, const StateVector &psi,
                       const InsertionList &insertions, double step) {
    const std::size_t slices = hamiltonians.size();
    if (slices == 0) {
        throw InvalidArgument("heisenberg_oracle: need at least one slice");
    }
    const std::size_t d = hamiltonians.front().side();
    check_insertions(insertions, d, slices);
    check_initial(psi, d);
    Vector state = psi.vector();
    for (std::size_t s = 1; s <= slices; ++s) {
        if (const Operator *op = insertions.at(s)) {
            state = op->matrix() * state;
        }
        state = propagator(hamiltonians[s - 1], step) * state;
    }
    return psi.vector().dot(state);
}

cplx heisenberg_trace_oracle(const Operator &hamiltonian, const InsertionList &insertions, double step,
                             std::size_t slices) {
    const std::size_t d = hamiltonian.side();
    check_insertions(insertions, d, slices);
    const Matrix u = propagator(hamiltonian, step);
    Matrix acc = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t s = 1; s <= slices; ++s) {
        if (const Operator *op = insertions.at(s)) {
            acc = op->matrix() * acc;
        }
        acc = u * acc;
    }
    return acc.trace();
}

cplx thermal_oracle(const Operator &hamiltonian, const InsertionList &insertions, double step, std::size_t slices) {
    const std::size_t d = hamiltonian.side();
    check_insertions(insertions, d, slices);
    const double beta = step * static_cast<double>(slices);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian.matrix());
    const Matrix &v = es.eigenvectors();
    const Eigen::VectorXd &e = es.eigenvalues();
    auto heat = [&](double theta) {
        Vector w = (theta * e.array()).exp().cast<cplx>().matrix();
        return Matrix(v * w.asDiagonal() * v.adjoint());
    };
    // Time-ordered product, latest theta leftmost.
    Matrix ordered = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto &item : insertions.items()) {
        double theta = step * static_cast<double>(item.slice - 1);
        Matrix heis = heat(theta) * item.op.matrix() * heat(-theta);
        ordered = heis * ordered;
    }
    return (heat(-beta) * ordered).trace();
}

namespace {

InsertionList draw_insertions(Rng &rng, std::size_t local_dim, std::size_t slices) {
    InsertionList out;
    for (std::size_t s = 1; s <= slices; ++s) {
        if (uniform(rng, 0.0, 1.0) < 0.6) {
            out.add(s, random_matrix(rng, local_dim));
        }
    }
    return out;
}

CorrelatorReport compare(std::size_t trial, cplx extended, cplx oracle, double tolerance) {
    CorrelatorReport r;
    r.trial = trial;
    r.extended_value = extended;
    r.oracle_value = oracle;
    r.abs_diff = std::abs(extended - oracle);
    r.passed = r.abs_diff < tolerance;
    return r;
}

}  // namespace

std::vector<CorrelatorReport> verify_map(const MapSuite &suite) {
    ExtendedSpace space(suite.local_dim, suite.slices, suite.step);
    std::vector<CorrelatorReport> reports(suite.trials);
    parallel_for(suite.trials, [&](std::size_t trial) {
        Rng rng(derive_seed(suite.seed, trial));
        std::vector<Operator> hs;
        switch (suite.draw) {
            case HamiltonianDraw::zero:
                hs.assign(suite.slices, Operator::zero(Shape{suite.local_dim}));
                break;
            case HamiltonianDraw::random:
                hs.assign(suite.slices, random_hermitian(rng, suite.local_dim));
                break;
            case HamiltonianDraw::random_time_dependent:
                for (std::size_t s = 0; s < suite.slices; ++s) {
                    hs.push_back(random_hermitian(rng, suite.local_dim));
                }
                break;
        }
        StateVector psi = random_state(rng, suite.local_dim);
        InsertionList ins = draw_insertions(rng, suite.local_dim, suite.slices);
        DiscreteAction action = suite.draw == HamiltonianDraw::random_time_dependent
                                    ? build_action_timedep(space, hs)
                                    : build_action(space, hs.front());
        cplx ext = extended_correlator(action, ins, psi);
        cplx ora = heisenberg_oracle(hs, psi, ins, suite.step);
        reports[trial] = compare(trial, ext, ora, suite.tolerance);
    });
    return reports;
}

std::vector<CorrelatorReport> verify_map(const ExtendedSpace &space, const Operator &hamiltonian, std::size_t trials,
                                         std::uint64_t seed, double tolerance) {
    std::vector<Operator> hs(space.slices(), hamiltonian);
    DiscreteAction action = build_action(space, hamiltonian);
    std::vector<CorrelatorReport> reports(trials);
    parallel_for(trials, [&](std::size_t trial) {
        Rng rng(derive_seed(seed, trial));
        StateVector psi = random_state(rng, space.local_dim());
        InsertionList ins = draw_insertions(rng, space.local_dim(), space.slices());
        reports[trial] = compare(trial, extended_correlator(action, ins, psi),
                                 heisenberg_oracle(hs, psi, ins, space.step()), tolerance);
    });
    return reports;
}

std::vector<CorrelatorReport> verify_map(const ExtendedSpace &space, const std::vector<Operator> &hamiltonians,
                                         std::size_t trials, std::uint64_t seed, double tolerance) {
    DiscreteAction action = build_action_timedep(space, hamiltonians);
    std::vector<CorrelatorReport> reports(trials);
    parallel_for(trials, [&](std::size_t trial) {
        Rng rng(derive_seed(seed, trial));
        StateVector psi = random_state(rng, space.local_dim());
        InsertionList ins = draw_insertions(rng, space.local_dim(), space.slices());
        reports[trial] = compare(trial, extended_correlator(action, ins, psi),
                                 heisenberg_oracle(hamiltonians, psi, ins, space.step()), tolerance);
    });
    return reports;
}

Operator thermal_reduction(const DiscreteAction &action) {
    if (action.kind != ActionKind::wick_rotated) {
        throw InvalidArgument("thermal_reduction: action must be Wick-rotated");
    }
    return partial_trace(action.matrix, {0});
}

Operator PauliTable::reconstruct() const {
    Operator acc = Operator::zero(Shape{2, 2});
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            acc += (0.25 * coefficients[i][j]) * tensor_product(pauli::by_index(i), pauli::by_index(j));
        }
    }
    return acc;
}

PauliTable pauli_extended_state(const Operator &hamiltonian, double step, const StateVector &psi) {
    if (hamiltonian.side() != 2) {
        throw InvalidArgument("pauli_extended_state: qubit Hamiltonian required");
    }
    check_initial(psi, 2);
    ExtendedSpace space(2, 2, step);
    DiscreteAction action = build_action(space, hamiltonian);
    Operator rho_bar = embed_at_slice(space, psi.projector(), 1) * action.matrix;
    PauliTable table{rho_bar, {}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Operator pp = tensor_product(pauli::by_index(i), pauli::by_index(j));
            table.coefficients[i][j] = trace_of_product(rho_bar.matrix(), pp.matrix());
        }
    }
    return table;
}

}  // namespace xtqm
