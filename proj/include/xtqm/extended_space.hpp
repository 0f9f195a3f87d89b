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

#ifndef XTQM_EXTENDED_SPACE_HPP
#define XTQM_EXTENDED_SPACE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "xtqm/operator.hpp"

namespace xtqm {

/// N time slices of a d-level system, optionally followed by a K-level foliation register.
///
/// Basis strings |n_1 n_2 ... n_N> use slice 1 as the most significant digit; the register,
/// when present, is the least significant factor.
class ExtendedSpace {
   public:
    ExtendedSpace(std::size_t local_dim, std::size_t slices, double step, std::size_t foliation_dim = 1);

    std::size_t local_dim() const {
        return local_dim_;
    }
    std::size_t slices() const {
        return slices_;
    }
    std::size_t foliation_dim() const {
        return foliation_dim_;
    }
    double step() const {
        return step_;
    }
    /// Total time extent N * step.
    double extent() const {
        return step_ * static_cast<double>(slices_);
    }
    bool has_register() const {
        return foliation_dim_ > 1;
    }
    /// [d] * N
    Shape slice_shape() const;
    /// slice_shape plus [K] when the register is present.
    Shape shape() const;
    std::size_t slice_dimension() const;
    /// Same slices and step, register dropped.
    ExtendedSpace without_register() const;

   private:
    std::size_t local_dim_;
    std::size_t slices_;
    double step_;
    std::size_t foliation_dim_;
};

enum class ActionKind { unitary, time_dependent, wick_rotated, controlled };

std::string to_string(ActionKind kind);

/// The operator e^{iS} on an extended space.
struct DiscreteAction {
    ExtendedSpace space;
    Operator matrix;
    ActionKind kind;
    /// Generators used per slice (or per register branch for the controlled kind).
    std::vector<Operator> slice_hamiltonians;
    /// Non-fatal diagnostics, e.g. a non-Hermitian generator.
    std::vector<std::string> warnings;
};

/// e^{i eps P_0}: |n_1 n_2 ... n_N> -> |n_N n_1 ... n_{N-1}>, built as a permutation.
/// Slice contents move forward by one. Example with N=3, d=2: |011> -> |101>.
Operator cyclic_shift(const ExtendedSpace &space);

/// I x ... x op x ... x I with op on `slice` (1-based). Identity on the register if present.
Operator embed_at_slice(const ExtendedSpace &space, const Operator &op, std::size_t slice);

/// shift * (U x U x ... x U), U = exp(-i eps H).
DiscreteAction build_action(const ExtendedSpace &space, const Operator &hamiltonian);

/// shift * (U_1 x ... x U_N), U_i = exp(-i eps H_i).
DiscreteAction build_action_timedep(const ExtendedSpace &space, const std::vector<Operator> &hamiltonians);

/// Same as build_action_timedep but takes the per-slice unitaries directly.
DiscreteAction build_action_from_unitaries(const ExtendedSpace &space, const std::vector<Operator> &unitaries);

/// shift * (V x ... x V), V = exp(-eps H).
DiscreteAction build_action_wick(const ExtendedSpace &space, const Operator &hamiltonian);

/// sum_k build_action(H_k) x |k><k| with the register as last factor.
DiscreteAction build_controlled_action(const ExtendedSpace &space, const std::vector<Operator> &family);

/// Projects the register of a controlled action onto |k> and returns the branch action.
DiscreteAction condition_on_register(const DiscreteAction &action, std::size_t k);

}  // namespace xtqm

#endif
