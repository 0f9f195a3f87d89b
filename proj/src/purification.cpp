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

#include "xtqm/purification.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "xtqm/errors.hpp"
#include "xtqm/numeric_policy.hpp"

namespace xtqm {

namespace {

void require_right_half(cplx lambda, const char *what) {
    if (!(lambda.real() > 0.0) || !std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
        throw InvalidArgument(std::string(what) + ": Re(lambda) must be positive and finite");
    }
}

// Mixed-radix digits, most significant first.
void decode(std::size_t index, const Shape &dims, std::vector<std::size_t> &digits) {
    for (std::size_t f = dims.size(); f-- > 0;) {
        digits[f] = index % dims[f];
        index /= dims[f];
    }
}

std::size_t encode(const std::vector<std::size_t> &digits, const Shape &dims) {
    std::size_t index = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        index = index * dims[f] + digits[f];
    }
    return index;
}

}  // namespace

ModeSpectrum::ModeSpectrum(std::vector<cplx> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) {
        throw InvalidArgument("mode spectrum: need at least one mode");
    }
    for (cplx l : lambdas_) {
        require_right_half(l, "mode spectrum");
    }
}

double BogoliubovPair::hyperbolic_norm() const {
    return std::norm(u) - std::norm(v);
}

TruncatedFockSpace::TruncatedFockSpace(std::size_t n_max, std::size_t modes) : n_max_(n_max), modes_(modes) {
    if (n_max_ < 1) {
        throw InvalidArgument("truncated Fock space: n_max must be >= 1");
    }
    if (modes_ < 1) {
        throw InvalidArgument("truncated Fock space: need at least one mode");
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < 2 * modes_ && total <= policy().dimension_cap; ++i) {
        total *= local_dim();
    }
    if (total > policy().dimension_cap) {
        throw ResourceError("truncated Fock space: (n_max+1)^(2 modes) exceeds the dimension cap");
    }
}

Shape TruncatedFockSpace::doubled_shape() const {
    return Shape(2 * modes_, local_dim());
}

Shape TruncatedFockSpace::system_shape() const {
    return Shape(modes_, local_dim());
}

std::size_t required_n_max(cplx lambda, double bound) {
    require_right_half(lambda, "required_n_max");
    if (!(bound > 0.0) || bound >= 1.0) {
        throw InvalidArgument("required_n_max: bound must lie in (0, 1)");
    }
    auto n = static_cast<std::size_t>(std::floor(-std::log(bound) / lambda.real())) + 1;
    while (n > 1 && std::exp(-lambda.real() * static_cast<double>(n - 1)) < bound) {
        --n;
    }
    return std::max<std::size_t>(n, 1);
}

GeneralizedState purified_vacua(const ModeSpectrum &spectrum, const TruncatedFockSpace &fock) {
    if (spectrum.modes() != fock.modes()) {
        throw InvalidArgument("purified_vacua: spectrum and Fock space disagree on the mode count");
    }
    const double bound = policy().truncation_bound;
    for (cplx l : spectrum.lambdas()) {
        if (l.real() < kMinVectorRealPart) {
            throw InvalidArgument("purified_vacua: Re(lambda) below " + std::to_string(kMinVectorRealPart) +
                                  "; use the geometric closed forms");
        }
        if (!(std::exp(-l.real() * static_cast<double>(fock.n_max())) < bound)) {
            throw TruncationError("purified_vacua: truncation bound violated", required_n_max(l, bound));
        }
    }

    const std::size_t modes = fock.modes();
    const Shape sys = fock.system_shape();
    const std::size_t sys_size = shape_size(sys);

    Vector ket = Vector::Zero(static_cast<Eigen::Index>(sys_size * sys_size));
    Vector bra = ket;
    std::vector<std::size_t> digits(modes);
    for (std::size_t s = 0; s < sys_size; ++s) {
        decode(s, sys, digits);
        cplx wk(1.0, 0.0);
        cplx wb(1.0, 0.0);
        for (std::size_t k = 0; k < modes; ++k) {
            const cplx l = spectrum.lambdas()[k];
            const auto n = static_cast<double>(digits[k]);
            wk *= std::exp(-l * n / 2.0);
            wb *= std::exp(-std::conj(l) * n / 2.0);
        }
        // system digits repeated in the environment half
        auto idx = static_cast<Eigen::Index>(s * sys_size + s);
        ket(idx) = wk;
        bra(idx) = wb;
    }
    const Shape shape = fock.doubled_shape();
    return GeneralizedState(StateVector(std::move(ket), shape), StateVector(std::move(bra), shape));
}

cplx geometric_overlap(cplx lambda, std::size_t n_max) {
    require_right_half(lambda, "geometric_overlap");
    const cplx q = std::exp(-lambda);
    return (1.0 - std::pow(q, static_cast<double>(n_max + 1))) / (1.0 - q);
}

cplx geometric_overlap_limit(cplx lambda) {
    require_right_half(lambda, "geometric_overlap_limit");
    return 1.0 / (1.0 - std::exp(-lambda));
}

cplx bose_occupation(cplx lambda) {
    require_right_half(lambda, "bose_occupation");
    return 1.0 / (std::exp(lambda) - 1.0);
}

double occupation_tail_bound(cplx lambda, std::size_t n_max) {
    require_right_half(lambda, "occupation_tail_bound");
    const double r = std::exp(-lambda.real());
    const double n1 = static_cast<double>(n_max + 1);
    const double rn = std::pow(r, n1);
    const cplx q = std::exp(-lambda);
    // <n>_N = A_N / Z_N; the difference to A / Z splits into an A_N z_tail and an a_tail term.
    cplx a_n(0.0, 0.0);
    cplx z_n(0.0, 0.0);
    cplx qn(1.0, 0.0);
    for (std::size_t n = 0; n <= n_max; ++n) {
        a_n += static_cast<double>(n) * qn;
        z_n += qn;
        qn *= q;
    }
    const double mean_n = std::abs(a_n / z_n);
    const double inv_z = std::abs(1.0 - q);
    return (mean_n * rn / (1.0 - r) + n1 * rn / ((1.0 - r) * (1.0 - r))) * inv_z;
}

BogoliubovPair bogoliubov_coeffs(cplx lambda) {
    require_right_half(lambda, "bogoliubov_coeffs");
    const double s = std::sqrt(-std::expm1(-lambda.real()));
    return BogoliubovPair{cplx(1.0 / s, 0.0), -std::exp(-lambda / 2.0) / s};
}

double annihilation_check(const GeneralizedState &state, cplx lambda, const TruncatedFockSpace &fock,
                          std::size_t mode, LadderTarget target, bool use_bra) {
    if (mode >= fock.modes()) {
        throw InvalidArgument("annihilation_check: mode index out of range");
    }
    const Shape dims = fock.doubled_shape();
    if (state.shape() != dims) {
        throw InvalidArgument("annihilation_check: state shape does not match the Fock space");
    }
    const BogoliubovPair c = bogoliubov_coeffs(use_bra ? std::conj(lambda) : lambda);
    const Vector &in = use_bra ? state.bra().vector() : state.ket().vector();

    const std::size_t sys_factor = mode;
    const std::size_t env_factor = fock.modes() + mode;
    const std::size_t lowered = target == LadderTarget::system ? sys_factor : env_factor;
    const std::size_t raised = target == LadderTarget::system ? env_factor : sys_factor;

    Shape out_dims = dims;
    out_dims[raised] += 1;
    Vector out = Vector::Zero(static_cast<Eigen::Index>(shape_size(out_dims)));
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t i = 0; i < shape_size(dims); ++i) {
        const cplx amp = in(static_cast<Eigen::Index>(i));
        if (amp == cplx(0.0, 0.0)) {
            continue;
        }
        decode(i, dims, digits);
        const std::size_t nl = digits[lowered];
        if (nl > 0) {
            digits[lowered] = nl - 1;
            out(static_cast<Eigen::Index>(encode(digits, out_dims))) += c.u * std::sqrt(static_cast<double>(nl)) * amp;
            digits[lowered] = nl;
        }
        const std::size_t nr = digits[raised];
        digits[raised] = nr + 1;
        out(static_cast<Eigen::Index>(encode(digits, out_dims))) +=
            c.v * std::sqrt(static_cast<double>(nr + 1)) * amp;
    }
    return out.norm() / in.norm();
}

double annihilation_bound(cplx lambda, std::size_t n_max) {
    const BogoliubovPair c = bogoliubov_coeffs(lambda);
    const double r = std::exp(-lambda.real());
    double norm2 = 0.0;
    double rn = 1.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        norm2 += rn;
        rn *= r;
    }
    const double n = static_cast<double>(n_max);
    return std::abs(c.v) * std::sqrt(n + 1.0) * std::exp(-lambda.real() * n / 2.0) / std::sqrt(norm2);
}

cplx weak_value(const GeneralizedState &state, const Operator &obs) {
    const Shape &shape = state.shape();
    std::size_t sys = 1;
    std::size_t f = 0;
    while (f < shape.size() && sys < obs.side()) {
        sys *= shape[f++];
    }
    if (sys != obs.side()) {
        throw InvalidArgument("weak_value: observable does not match a leading block of factors");
    }
    const std::size_t env = state.ket().size() / sys;
    const auto rs = static_cast<Eigen::Index>(sys);
    const auto re = static_cast<Eigen::Index>(env);
    Matrix psi(rs, re);
    Matrix phi(rs, re);
    for (Eigen::Index s = 0; s < rs; ++s) {
        for (Eigen::Index e = 0; e < re; ++e) {
            psi(s, e) = state.ket().vector()(s * re + e);
            phi(s, e) = state.bra().vector()(s * re + e);
        }
    }
    const Matrix o_psi = obs.matrix() * psi;
    const cplx num = (phi.conjugate().cwiseProduct(o_psi)).sum();
    return num / state.overlap();
}

Operator number_operator(const TruncatedFockSpace &fock, std::size_t mode) {
    if (mode >= fock.modes()) {
        throw InvalidArgument("number_operator: mode index out of range");
    }
    std::vector<Operator> factors;
    const auto d = static_cast<Eigen::Index>(fock.local_dim());
    for (std::size_t k = 0; k < fock.modes(); ++k) {
        if (k == mode) {
            Matrix n = Matrix::Zero(d, d);
            for (Eigen::Index i = 0; i < d; ++i) {
                n(i, i) = static_cast<double>(i);
            }
            factors.emplace_back(std::move(n));
        } else {
            factors.push_back(Operator::identity(Shape{fock.local_dim()}));
        }
    }
    return tensor_product(factors);
}

GeneralizedState qubit_generalized_state(const Operator &hamiltonian, double step) {
    if (hamiltonian.side() != 2) {
        throw InvalidArgument("qubit_generalized_state: Hamiltonian must be 2x2");
    }
    const Shape shape{2, 2, 2};
    const double h = 1.0 / std::sqrt(2.0);
    Vector psi = Vector::Zero(8);
    psi(0) = h;  // |000>
    psi(3) = h;  // |011>
    Vector seed = Vector::Zero(8);
    seed(0) = h;  // |000>
    seed(5) = h;  // |101>
    const Operator w = matrix_exp(Operator(hamiltonian.matrix()), cplx(0.0, step));
    const Operator lift = tensor_product({w, w, Operator::identity(Shape{2})});
    Vector phi = lift.matrix() * seed;
    return GeneralizedState(StateVector(std::move(psi), shape), StateVector(std::move(phi), shape));
}

Operator reduce_to_leading(const GeneralizedState &state, std::size_t keep_factors) {
    if (keep_factors > state.shape().size()) {
        throw InvalidArgument("reduce_to_leading: more factors requested than present");
    }
    std::vector<std::size_t> keep(keep_factors);
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    return partial_trace(state.density(), keep);
}

cplx pseudo_entropy(const Operator &reduced) {
    constexpr double trace_tolerance = 1e-8;
    const cplx tr = reduced.trace();
    if (std::abs(tr - 1.0) > trace_tolerance) {
        throw InvalidArgument("pseudo_entropy: trace is far from 1");
    }
    const Spectrum spec = eig_spectrum(reduced);
    cplx s(0.0, 0.0);
    for (cplx l : spec.values) {
        if (std::abs(l) < policy().zero_eigenvalue) {
            continue;
        }
        s -= l * std::log(l);
    }
    return s;
}

cplx pseudo_entropy(const GeneralizedState &state) {
    return pseudo_entropy(state.density());
}

}  // namespace xtqm
