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

#ifndef XTQM_CORRESPONDENCE_HPP
#define XTQM_CORRESPONDENCE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xtqm/extended_space.hpp"
#include "xtqm/operator.hpp"

namespace xtqm {

struct Insertion {
    std::size_t slice;  // 1-based
    Operator op;
};

/// At most one operator per slice, slices strictly increasing. Several operators acting at
/// the same slice must be multiplied by the caller first.
class InsertionList {
   public:
    InsertionList() = default;
    InsertionList(std::initializer_list<Insertion> items);

    void add(std::size_t slice, Operator op);
    const std::vector<Insertion> &items() const {
        return items_;
    }
    bool empty() const {
        return items_.empty();
    }
    /// Operator at `slice`, or nullptr.
    const Operator *at(std::size_t slice) const;
    /// Every slice index moved by +shift, wrapped into 1..slices.
    InsertionList shifted(std::size_t shift, std::size_t slices) const;

   private:
    std::vector<Insertion> items_;
};

struct CorrelatorReport {
    std::size_t trial = 0;
    cplx extended_value;
    cplx oracle_value;
    double abs_diff = 0.0;
    bool passed = false;
};

/// Tr[P_psi e^{iS} (x)_i O_i], P_psi = |psi><psi| on slice 1, or the identity if no initial state.
/// For a controlled action the register is traced too.
cplx extended_correlator(const DiscreteAction &action, const InsertionList &insertions,
                         const std::optional<StateVector> &initial = std::nullopt);

/// Tr[e^{iS} O] / Tr[e^{iS}]; throws DegenerateNormalization when |Tr e^{iS}| is tiny.
cplx normalized_correlator(const DiscreteAction &action, const InsertionList &insertions);

/// <psi| U O_N U O_{N-1} ... U O_1 |psi>, U = exp(-i eps H), evaluated by stepping the state.
/// Slice i sits at time eps*(i-1); the latest insertion acts last.
cplx heisenberg_oracle(const Operator &hamiltonian, const StateVector &psi, const InsertionList &insertions,
                       double step, std::size_t slices);

/// Time-dependent version: <psi| U_N O_N ... U_1 O_1 |psi>, U_i = exp(-i eps H_i).
cplx heisenberg_oracle(const std::vector<Operator> &hamiltonians, const StateVector &psi,
                       const InsertionList &insertions, double step);

/// Tr[U O_N ... U O_1]: the oracle without an initial state.
cplx heisenberg_trace_oracle(const Operator &hamiltonian, const InsertionList &insertions, double step,
                             std::size_t slices);

/// Tr[e^{-beta H} O_N(theta_N) ... O_1(theta_1)], O(theta) = e^{H theta} O e^{-H theta},
/// theta_i = eps*(i-1), beta = N*eps.
cplx thermal_oracle(const Operator &hamiltonian, const InsertionList &insertions, double step, std::size_t slices);

enum class HamiltonianDraw { zero, random, random_time_dependent };

struct MapSuite {
    std::size_t local_dim = 2;
    std::size_t slices = 2;
    double step = 0.3;
    HamiltonianDraw draw = HamiltonianDraw::random;
    std::size_t trials = 100;
    std::uint64_t seed = 7;
    double tolerance = 1e-10;
};

/// Draws (H, psi, insertions) per trial from the seeded generator and compares the extended
/// correlator against the oracle. Reports are ordered by trial index.
std::vector<CorrelatorReport> verify_map(const MapSuite &suite);

/// Fixed-Hamiltonian variant; psi and insertions are drawn per trial.
std::vector<CorrelatorReport> verify_map(const ExtendedSpace &space, const Operator &hamiltonian,
                                         std::size_t trials, std::uint64_t seed, double tolerance = 1e-10);
std::vector<CorrelatorReport> verify_map(const ExtendedSpace &space, const std::vector<Operator> &hamiltonians,
                                         std::size_t trials, std::uint64_t seed, double tolerance = 1e-10);

/// Partial trace of a Wick-rotated action over slices 2..N.
Operator thermal_reduction(const DiscreteAction &action);

struct PauliTable {
    /// (|psi><psi| x I) e^{iS} on two slices.
    Operator rho_bar;
    /// coefficients[i][j] = Tr[rho_bar P_i x P_j], P = (I, X, Y, Z).
    std::array<std::array<cplx, 4>, 4> coefficients;

    /// (1/4) sum_ij c_ij P_i x P_j
    Operator reconstruct() const;
};

PauliTable pauli_extended_state(const Operator &hamiltonian, double step, const StateVector &psi);

}  // namespace xtqm

#endif
