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

// Experiments over the discrete extended Hilbert space and generalized purification.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "xtqm/cli/experiments.hpp"
#include "xtqm/correspondence.hpp"
#include "xtqm/extended_space.hpp"
#include "xtqm/kg_modes.hpp"
#include "xtqm/numeric_policy.hpp"
#include "xtqm/purification.hpp"
#include "xtqm/random.hpp"

namespace xtqm::cli {

namespace {

std::string label(std::size_t d, std::size_t n) {
    return "d=" + std::to_string(d) + " N=" + std::to_string(n);
}

std::size_t positive(std::int64_t v, const char *key) {
    if (v < 1) {
        throw ConfigError(std::string(key) + " values must be positive");
    }
    return static_cast<std::size_t>(v);
}

Operator named_hamiltonian(const std::string &name) {
    if (name == "sigma_x") {
        return pauli::x();
    }
    if (name == "sigma_y") {
        return pauli::y();
    }
    if (name == "sigma_z") {
        return pauli::z();
    }
    if (name == "zero") {
        return Operator::zero(Shape{2});
    }
    throw ConfigError("unknown hamiltonian '" + name + "' (sigma_x, sigma_y, sigma_z, zero)");
}

Matrix heat_kernel(const Operator &h, double beta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
    const Vector w = (-beta * es.eigenvalues().array()).exp().cast<cplx>().matrix();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double max_diff(const std::vector<CorrelatorReport> &reports) {
    double worst = 0.0;
    for (const auto &r : reports) {
        worst = std::max(worst, r.abs_diff);
    }
    return worst;
}

void add_rows(Table &t, std::size_t d, std::size_t n, const std::string &variant,
              const std::vector<CorrelatorReport> &reports) {
    for (const auto &r : reports) {
        Table::Row row;
        row << d << n << variant << r.trial << r.extended_value << r.oracle_value << r.abs_diff;
        t.add(row);
    }
}

const std::vector<std::string> kCorrelatorColumns{"d",         "N",         "variant",   "trial",   "extended_re",
                                                  "extended_im", "oracle_re", "oracle_im", "abs_diff"};

void run_map(const Params &p, RunReport &report) {
    const double tol = p.number("tolerance");
    const std::uint64_t seed = p.seed();
    Table &rows = report.table("trials", kCorrelatorColumns);
    std::uint64_t block = 0;
    for (std::int64_t d_raw : p.integers("d")) {
        for (std::int64_t n_raw : p.integers("N")) {
            MapSuite suite;
            suite.local_dim = positive(d_raw, "d");
            suite.slices = positive(n_raw, "N");
            suite.step = p.number("step");
            suite.trials = p.count("trials");
            suite.tolerance = tol;
            suite.seed = derive_seed(seed, block++);
            suite.draw = HamiltonianDraw::random;
            const auto fixed = verify_map(suite);
            add_rows(rows, suite.local_dim, suite.slices, "static", fixed);
            report.check_at_most("map " + label(suite.local_dim, suite.slices) + " static max|ext-oracle|",
                                 max_diff(fixed), tol);
            if (p.boolean("time_dependent")) {
                suite.seed = derive_seed(seed, block++);
                suite.draw = HamiltonianDraw::random_time_dependent;
                const auto varying = verify_map(suite);
                add_rows(rows, suite.local_dim, suite.slices, "time_dependent", varying);
                report.check_at_most("map " + label(suite.local_dim, suite.slices) + " time-dependent max|ext-oracle|",
                                     max_diff(varying), tol);
            }
        }
    }

    // H = 0 on two slices: Tr[e^{iS} A x B] = Tr[BA].
    const std::size_t swaps = p.count("swap_trials");
    if (swaps > 0) {
        Table &swap = report.table("swap", {"d", "trial", "extended_re", "extended_im", "trace_re", "trace_im",
                                            "abs_diff"});
        for (std::int64_t d_raw : p.integers("d")) {
            const std::size_t d = positive(d_raw, "d");
            const ExtendedSpace space(d, 2, p.number("step"));
            const DiscreteAction action = build_action(space, Operator::zero(Shape{d}));
            double worst = 0.0;
            for (std::size_t t = 0; t < swaps; ++t) {
                Rng rng(derive_seed(seed, 1000000 + 1000 * d + t));
                const Operator a = random_matrix(rng, d);
                const Operator b = random_matrix(rng, d);
                const cplx ext = extended_correlator(action, InsertionList{{1, a}, {2, b}});
                const cplx tr = (b.matrix() * a.matrix()).trace();
                worst = std::max(worst, std::abs(ext - tr));
                Table::Row row;
                row << d << t << ext << tr << std::abs(ext - tr);
                swap.add(row);
            }
            report.check_at_most("swap test d=" + std::to_string(d) + " max|Tr[e^{iS} A x B] - Tr[BA]|", worst,
                                 p.number("swap_tolerance"));
        }
    }
}

void run_timedep_map(const Params &p, RunReport &report) {
    MapSuite suite;
    suite.local_dim = positive(p.integer("d"), "d");
    suite.slices = positive(p.integer("N"), "N");
    suite.step = p.number("step");
    suite.trials = p.count("trials");
    suite.tolerance = p.number("tolerance");
    suite.seed = p.seed();
    suite.draw = HamiltonianDraw::random_time_dependent;
    const auto reports = verify_map(suite);
    add_rows(report.table("trials", kCorrelatorColumns), suite.local_dim, suite.slices, "time_dependent", reports);
    report.check_at_most("time-dependent " + label(suite.local_dim, suite.slices) + " max|ext-oracle|",
                         max_diff(reports), suite.tolerance);
}

void run_thermal(const Params &p, RunReport &report) {
    const std::size_t d = positive(p.integer("d"), "d");
    const double beta = p.number("beta");
    if (!(beta > 0.0)) {
        throw ConfigError("beta must be positive");
    }
    const std::size_t draws = p.count("draws");
    Table &t = report.table("reduction", {"N", "draw", "reduction_diff", "trace_re", "trace_im", "exact_trace",
                                          "correlator_diff"});
    for (std::int64_t n_raw : p.integers("N")) {
        const std::size_t n = positive(n_raw, "N");
        const ExtendedSpace space(d, n, beta / static_cast<double>(n));
        double red = 0.0;
        double tr_err = 0.0;
        double corr = 0.0;
        for (std::size_t k = 0; k < draws; ++k) {
            Rng rng(derive_seed(p.seed(), 100 * n + k));
            const Operator h = random_hermitian(rng, d);
            const DiscreteAction action = build_action_wick(space, h);
            const Matrix exact = heat_kernel(h, beta);
            const double rd = (thermal_reduction(action).matrix() - exact).cwiseAbs().maxCoeff();
            const cplx tr = action.matrix.trace();
            const double te = std::abs(tr - exact.trace());
            InsertionList ins;
            for (std::size_t s = 1; s <= n; ++s) {
                if (uniform(rng, 0.0, 1.0) < 0.5) {
                    ins.add(s, random_matrix(rng, d));
                }
            }
            const double cd =
                std::abs(extended_correlator(action, ins) - thermal_oracle(h, ins, space.step(), n));
            red = std::max(red, rd);
            tr_err = std::max(tr_err, te);
            corr = std::max(corr, cd);
            Table::Row row;
            row << n << k << rd << tr << exact.trace().real() << cd;
            t.add(row);
        }
        report.check_at_most("thermal N=" + std::to_string(n) + " max|Tr_{t!=0} e^{iS} - e^{-beta H}|", red,
                             p.number("tolerance"));
        report.check_at_most("thermal N=" + std::to_string(n) + " max|Tr e^{iS} - Tr e^{-beta H}|", tr_err,
                             p.number("trace_tolerance"));
        report.check_at_most("thermal N=" + std::to_string(n) + " max|correlator - thermal oracle|", corr,
                             p.number("tolerance"));
    }
}

void run_qubit(const Params &p, RunReport &report) {
    const double eps = p.number("epsilon");
    const double tol = p.number("tolerance");
    const StateVector psi(Vector::Unit(2, 0), Shape{2});
    std::vector<std::pair<std::string, Operator>> cases{{p.string("hamiltonian"), named_hamiltonian(p.string("hamiltonian"))}};
    for (std::size_t k = 0; k < p.count("random_draws"); ++k) {
        Rng rng(derive_seed(p.seed(), k));
        cases.emplace_back("random_" + std::to_string(k), random_hermitian(rng, 2));
    }
    Table &coeffs = report.table("coefficients", {"hamiltonian", "i", "j", "coefficient_re", "coefficient_im",
                                                  "oracle_re", "oracle_im", "abs_diff"});
    Table &purif = report.table("purification", {"hamiltonian", "max_abs_diff", "pseudo_entropy_abs"});
    double worst_coeff = 0.0;
    double worst_purif = 0.0;
    double worst_entropy = 0.0;
    for (const auto &[name, h] : cases) {
        const PauliTable table = pauli_extended_state(h, eps, psi);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                const cplx oracle = heisenberg_oracle(h, psi, InsertionList{{1, pauli::by_index(i)}, {2, pauli::by_index(j)}},
                                                      eps, 2);
                const cplx c = table.coefficients[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                worst_coeff = std::max(worst_coeff, std::abs(c - oracle));
                Table::Row row;
                row << name << i << j << c << oracle << std::abs(c - oracle);
                coeffs.add(row);
            }
        }
        const GeneralizedState state = qubit_generalized_state(h, eps);
        const Matrix reduced = reduce_to_leading(state, 2).matrix();
        const Matrix target = table.rho_bar.matrix() / table.rho_bar.trace();
        const double diff = (reduced - target).cwiseAbs().maxCoeff();
        const double entropy = std::abs(pseudo_entropy(state));
        worst_purif = std::max(worst_purif, diff);
        worst_entropy = std::max(worst_entropy, entropy);
        Table::Row row;
        row << name << diff << entropy;
        purif.add(row);
    }
    report.check_at_most("qubit Pauli coefficients max|table - oracle|", worst_coeff, tol);
    report.check_at_most("qubit Tr_E generalized purification max|. - rho_bar/Tr rho_bar|", worst_purif, tol);
    report.check_at_most("qubit full-state pseudo-entropy max|S|", worst_entropy, p.number("entropy_tolerance"));
}

// Rank one at any cutoff, so the truncation policy is lifted while it is built.
GeneralizedState coarse_vacua(cplx lambda, std::size_t n_max) {
    const NumericPolicy saved = global_policy();
    global_policy().truncation_bound = 1.0;
    try {
        GeneralizedState out = purified_vacua(ModeSpectrum({lambda}), TruncatedFockSpace(n_max, 1));
        global_policy() = saved;
        return out;
    } catch (...) {
        global_policy() = saved;
        throw;
    }
}

void run_purify(const Params &p, RunReport &report) {
    const auto re = p.numbers("lambda_re");
    const auto im = p.numbers("lambda_im");
    if (re.size() != im.size()) {
        throw ConfigError("lambda_re and lambda_im need the same length");
    }
    const double tol = p.number("tolerance");
    const std::size_t max_dim = p.count("entropy_max_dim");
    Table &t = report.table("modes", {"lambda_re", "lambda_im", "n_max", "overlap_re", "overlap_im",
                                      "closed_form_re", "closed_form_im", "annihilation_residual",
                                      "annihilation_bound", "occupation_re", "occupation_im", "occupation_error",
                                      "occupation_bound", "pseudo_entropy_abs"});
    for (std::size_t k = 0; k < re.size(); ++k) {
        const cplx lambda(re[k], im[k]);
        std::size_t n_max = p.count("n_max");
        if (n_max == 0) {
            n_max = required_n_max(lambda, policy().truncation_bound);
        }
        const TruncatedFockSpace fock(n_max, 1);
        const GeneralizedState state = purified_vacua(ModeSpectrum({lambda}), fock);
        const std::string tag = "lambda=" + format_short(re[k]) + (im[k] < 0 ? "" : "+") + format_short(im[k]) + "i";

        const cplx closed = geometric_overlap(lambda, n_max);
        report.check_at_most("purify " + tag + " |overlap - geometric closed form|", std::abs(state.overlap() - closed),
                             tol);

        double residual = 0.0;
        for (auto target : {LadderTarget::system, LadderTarget::environment}) {
            for (bool bra : {false, true}) {
                residual = std::max(residual, annihilation_check(state, lambda, fock, 0, target, bra));
            }
        }
        const double bound = annihilation_bound(lambda, n_max);
        // The bound is the exact size of the cutoff term, so only round-off separates the two.
        report.check_at_most("purify " + tag + " annihilation residual within truncation bound", residual,
                             bound * (1.0 + p.number("bound_rounding")));

        const cplx occ = weak_value(state, number_operator(fock, 0));
        const double occ_err = std::abs(occ - bose_occupation(lambda));
        const double occ_bound = occupation_tail_bound(lambda, n_max);
        report.check_at_most("purify " + tag + " |<N> - Bose occupation|", occ_err, occ_bound);

        // The dense eigensolver is cubic in (n_max + 1)^2, so larger cutoffs get a smaller copy.
        const auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(max_dim)));
        const std::size_t entropy_n_max = std::min(n_max, side > 0 ? side - 1 : 0);
        const GeneralizedState small = entropy_n_max == n_max ? state : coarse_vacua(lambda, entropy_n_max);
        const double entropy = std::abs(pseudo_entropy(small));
        report.check_at_most("purify " + tag + " full-state pseudo-entropy |S| at n_max=" +
                                 std::to_string(entropy_n_max),
                             entropy, p.number("entropy_tolerance"));
        Table::Row row;
        row << re[k] << im[k] << n_max << state.overlap() << closed << residual << bound << occ << occ_err << occ_bound
            << entropy;
        t.add(row);
    }

    const std::size_t samples = p.count("bogoliubov_samples");
    if (samples > 0) {
        Rng rng(p.seed());
        double worst = 0.0;
        for (std::size_t k = 0; k < samples; ++k) {
            const cplx lambda(uniform(rng, 0.05, 6.0), uniform(rng, -4.0, 4.0));
            worst = std::max(worst, std::abs(bogoliubov_coeffs(lambda).hyperbolic_norm() - 1.0));
        }
        report.check_at_most("purify max| |u|^2 - |v|^2 - 1 | over random lambda", worst, tol);
    }
}

void run_p0_modes(const Params &p, RunReport &report) {
    const double step = p.number("step");
    Table &t = report.table("frequencies", {"N", "k", "frequency", "matsubara"});
    for (std::int64_t n_raw : p.integers("N")) {
        const std::size_t n = positive(n_raw, "N");
        const P0Modes modes = discrete_p0_modes(n, step);
        report.check_at_most("p0 modes N=" + std::to_string(n) + " max|F e^{i eps w} F^dagger - shift|", modes.residual,
                             p.number("tolerance"));
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double w = 2.0 * std::numbers::pi * static_cast<double>(k) / (step * static_cast<double>(n));
            worst = std::max(worst, std::abs(modes.frequencies[k] - w));
            Table::Row row;
            row << n << k << modes.frequencies[k] << w;
            t.add(row);
        }
        report.check_at_most("p0 modes N=" + std::to_string(n) + " frequencies 2 pi k / (N eps)", worst,
                             p.number("tolerance"));
    }
}

}  // namespace

std::vector<Experiment> quantum_experiments() {
    const Json required;
    return {
        {"map",
         "Extended correlators against Heisenberg-picture oracles, plus the two-slice SWAP trace test",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"d", ParamKind::integer_list, Json::array({2, 3}), "local dimensions"},
          {"N", ParamKind::integer_list, Json::array({1, 2, 3, 4}), "slice counts"},
          {"step", ParamKind::number, 0.3, "time step eps"},
          {"trials", ParamKind::integer, 100, "draws per (d, N)"},
          {"time_dependent", ParamKind::boolean, true, "also run per-slice Hamiltonians"},
          {"tolerance", ParamKind::number, 1e-10, "absolute tolerance"},
          {"swap_trials", ParamKind::integer, 100, "SWAP trace draws per d"},
          {"swap_tolerance", ParamKind::number, 1e-12, "SWAP trace tolerance"}},
         run_map},
        {"timedep-map",
         "Extended correlators for per-slice Hamiltonian lists",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"d", ParamKind::integer, 2, "local dimension"},
          {"N", ParamKind::integer, 3, "slices"},
          {"step", ParamKind::number, 0.3, "time step eps"},
          {"trials", ParamKind::integer, 100, "draws"},
          {"tolerance", ParamKind::number, 1e-10, "absolute tolerance"}},
         run_timedep_map},
        {"thermal",
         "Wick-rotated action: reduction to e^{-beta H}, trace and thermal correlators",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"d", ParamKind::integer, 3, "local dimension"},
          {"N", ParamKind::integer_list, Json::array({2, 4, 6}), "slice counts"},
          {"beta", ParamKind::number, 1.0, "inverse temperature N eps"},
          {"draws", ParamKind::integer, 10, "random Hamiltonians per N"},
          {"tolerance", ParamKind::number, 1e-10, "reduction and correlator tolerance"},
          {"trace_tolerance", ParamKind::number, 1e-12, "zero-insertion trace tolerance"}},
         run_thermal},
        {"qubit-appendix-d",
         "Two-slice qubit: Pauli table of rho_bar and its generalized purification",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"hamiltonian", ParamKind::string, "sigma_x", "sigma_x, sigma_y, sigma_z or zero"},
          {"epsilon", ParamKind::number, 0.3, "time step"},
          {"random_draws", ParamKind::integer, 20, "extra random Hamiltonians"},
          {"tolerance", ParamKind::number, 1e-12, "coefficient and purification tolerance"},
          {"entropy_tolerance", ParamKind::number, 1e-10, "full-state pseudo-entropy tolerance"}},
         run_qubit},
        {"purify",
         "Thermofield-style paired vacua: overlaps, Bogoliubov identity, annihilation, pseudo-entropy",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"lambda_re", ParamKind::number_list, Json::array({1.0, 2.0, 0.7, 3.0}), "Re lambda per case"},
          {"lambda_im", ParamKind::number_list, Json::array({0.0, 0.5, -0.3, 1.0}), "Im lambda per case"},
          {"n_max", ParamKind::integer, 0, "Fock truncation; 0 picks it from the truncation policy"},
          {"bogoliubov_samples", ParamKind::integer, 1000, "random lambda for |u|^2 - |v|^2"},
          {"tolerance", ParamKind::number, 1e-12, "overlap and Bogoliubov tolerance"},
          {"entropy_tolerance", ParamKind::number, 1e-10, "full-state pseudo-entropy tolerance"},
          {"bound_rounding", ParamKind::number, 1e-12, "relative round-off allowance on the annihilation bound"},
          {"entropy_max_dim", ParamKind::integer, 400, "largest doubled dimension for the pseudo-entropy eigensolve"}},
         run_purify},
        {"p0-modes",
         "Discrete P0 eigenmodes: Fourier diagonalization of the cyclic shift",
         {{"N", ParamKind::integer_list, Json::array({1, 2, 3, 4, 8, 16}), "slice counts"},
          {"step", ParamKind::number, 0.3, "time step eps"},
          {"tolerance", ParamKind::number, 1e-12, "absolute tolerance"}},
         run_p0_modes},
    };
}

}  // namespace xtqm::cli
