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

#ifndef XTQM_PURIFICATION_HPP
#define XTQM_PURIFICATION_HPP

#include <cstddef>
#include <vector>

#include "xtqm/operator.hpp"

namespace xtqm {

/// Complex mode parameters lambda_k, all with positive real part.
class ModeSpectrum {
   public:
    explicit ModeSpectrum(std::vector<cplx> lambdas);
    const std::vector<cplx> &lambdas() const {
        return lambdas_;
    }
    std::size_t modes() const {
        return lambdas_.size();
    }

   private:
    std::vector<cplx> lambdas_;
};

struct BogoliubovPair {
    cplx u;
    cplx v;
    /// |u|^2 - |v|^2
    double hyperbolic_norm() const;
};

/// Occupation cutoff per mode. Factor order of the doubled space: all system modes,
/// then all environment modes.
class TruncatedFockSpace {
   public:
    TruncatedFockSpace(std::size_t n_max, std::size_t modes);
    std::size_t n_max() const {
        return n_max_;
    }
    std::size_t modes() const {
        return modes_;
    }
    std::size_t local_dim() const {
        return n_max_ + 1;
    }
    Shape doubled_shape() const;
    Shape system_shape() const;

   private:
    std::size_t n_max_;
    std::size_t modes_;
};

/// Smallest n_max with exp(-Re(lambda) * n_max) < bound.
std::size_t required_n_max(cplx lambda, double bound);

/// Re(lambda) below which only closed-form scalar evaluations are used.
inline constexpr double kMinVectorRealPart = 0.5;

/// (|0_lambda>>, <<0bar_lambda|): ket weights e^{-lambda n/2}, bra built from lambda*.
/// Throws TruncationError if exp(-Re(lambda_k) n_max) is not below the policy bound.
GeneralizedState purified_vacua(const ModeSpectrum &spectrum, const TruncatedFockSpace &fock);

/// sum_{n <= n_max} e^{-lambda n}
cplx geometric_overlap(cplx lambda, std::size_t n_max);
/// 1 / (1 - e^{-lambda})
cplx geometric_overlap_limit(cplx lambda);
/// 1 / (e^{lambda} - 1)
cplx bose_occupation(cplx lambda);
/// Bound on |<n>_truncated - 1/(e^lambda - 1)|.
double occupation_tail_bound(cplx lambda, std::size_t n_max);

BogoliubovPair bogoliubov_coeffs(cplx lambda);

enum class LadderTarget { system, environment };

/// ||(u a_k (x) I + v I (x) a~_k^dagger)|vec>>|| / |||vec>>|| for the ket (lambda) or, with
/// use_bra, the bra vector with (u, v) built from lambda*. Target `environment` swaps the
/// roles (u a~_k + v a_k^dagger). The raised factor gets one extra level so the cutoff
/// boundary term is kept.
double annihilation_check(const GeneralizedState &state, cplx lambda, const TruncatedFockSpace &fock,
                          std::size_t mode = 0, LadderTarget target = LadderTarget::system, bool use_bra = false);

/// e^{-Re(lambda) n_max/2} sqrt(n_max+1) |v| / ||ket||, the exact size of the cutoff term.
double annihilation_bound(cplx lambda, std::size_t n_max);

/// <<Phi| O (x) 1_E |Psi>> / <<Phi|Psi>>; O acts on the leading factors of the state.
cplx weak_value(const GeneralizedState &state, const Operator &obs);

/// Number operator a_k^dagger a_k on the system modes of `fock`.
Operator number_operator(const TruncatedFockSpace &fock, std::size_t mode);

/// The 8-dimensional pair of the two-slice qubit example; factors (slice 1, slice 2, environment).
GeneralizedState qubit_generalized_state(const Operator &hamiltonian, double step);

/// Trace over trailing factors so only the leading `keep_factors` remain.
Operator reduce_to_leading(const GeneralizedState &state, std::size_t keep_factors);

/// -sum lambda log(lambda) over eigenvalues with |lambda| >= zero threshold, principal branch.
cplx pseudo_entropy(const Operator &reduced);
cplx pseudo_entropy(const GeneralizedState &state);

}  // namespace xtqm

#endif
