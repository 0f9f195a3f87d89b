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

// Experiments over fields: propagators, mode algebra, the classical lattice and Dirac spinors.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xtqm/classical_lattice.hpp"
#include "xtqm/cli/experiments.hpp"
#include "xtqm/correspondence.hpp"
#include "xtqm/dirac.hpp"
#include "xtqm/extended_space.hpp"
#include "xtqm/kg_modes.hpp"
#include "xtqm/poisson.hpp"
#include "xtqm/propagator.hpp"
#include "xtqm/random.hpp"

namespace xtqm::cli {

namespace {

constexpr double kPi = std::numbers::pi;

SpaceVector vec2(double t, double x) {
    SpaceVector v(2);
    v << t, x;
    return v;
}

PropagatorConfig propagator_config(const Params &p) {
    PropagatorConfig cfg;
    cfg.mass = p.number("mass");
    cfg.tau = p.number("tau");
    cfg.eps_reg = p.number("eps_reg");
    cfg.cutoff = p.number("cutoff");
    cfg.resolution = p.number("resolution");
    cfg.tolerance = p.number("grid_tolerance");
    cfg.validate();
    return cfg;
}

std::vector<ParamSpec> propagator_schema() {
    return {{"mass", ParamKind::number, 1.0, "field mass"},
            {"tau", ParamKind::number, 1e-2, "small tau of the mode correlator"},
            {"eps_reg", ParamKind::number, 1e-4, "i eps regulator of the normal frequency"},
            {"cutoff", ParamKind::number, 40.0, "Gaussian momentum window scale"},
            {"resolution", ParamKind::number, 8.0, "grid points per unit momentum"},
            {"grid_tolerance", ParamKind::number, 1e-6, "largest accepted grid refinement change"}};
}

double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::abs(b);
}

// Probe separations: spacelike (0, r) then timelike (t, 0).
std::vector<std::pair<std::string, SpaceVector>> probes(const std::vector<double> &spacelike,
                                                        const std::vector<double> &timelike) {
    std::vector<std::pair<std::string, SpaceVector>> out;
    for (double r : spacelike) {
        out.emplace_back("spacelike", vec2(0.0, r));
    }
    for (double t : timelike) {
        out.emplace_back("timelike", vec2(t, 0.0));
    }
    return out;
}

void run_propagator(const Params &p, RunReport &report) {
    const PropagatorConfig cfg = propagator_config(p);
    const Foliation fol = Foliation::canonical(2);
    const BoostMatrix boost = BoostMatrix::boost(2, 1, p.number("rapidity"));
    const Foliation boosted = boost.apply(fol);
    const double tol = p.number("tolerance");
    Table &t = report.table("probes", {"kind", "delta_t", "delta_x", "value_n_re", "value_n_im", "value_boosted_re",
                                       "value_boosted_im", "oracle_re", "oracle_im", "oracle_error",
                                       "closed_form_re", "closed_form_im", "rel_err", "rel_err_closed_form",
                                       "rel_err_boosted"});
    double worst = 0.0;
    for (const auto &[kind, delta] : probes(p.numbers("spacelike_r"), p.numbers("timelike_t"))) {
        const PropagatorResult engine = feynman_propagator(delta, fol, cfg);
        const PropagatorResult moved = feynman_propagator(boost.apply(delta), boosted, cfg);
        const QuadratureResult oracle = propagator_oracle(delta, fol, cfg, p.number("oracle_tolerance"));
        const cplx closed = propagator_closed_form(delta, cfg.mass);
        const double err = rel(engine.value, oracle.value);
        worst = std::max(worst, err);
        Table::Row row;
        row << kind << delta(0) << delta(1) << engine.value << moved.value << oracle.value << oracle.error << closed
            << err << rel(engine.value, closed) << rel(moved.value, engine.value);
        t.add(row);
        report.check_at_most("propagator " + kind + " (" + format_short(delta(0)) + ", " + format_short(delta(1)) +
                                 ") |engine - oracle| / |oracle|",
                             err, tol);
    }
    report.note("largest engine/oracle relative difference " + format_double(worst));

    const std::size_t points = p.count("partial_fraction_points");
    if (points > 0) {
        Rng rng(p.seed());
        Table &pf = report.table("partial_fraction", {"p0", "p1", "eps", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                                                      "diff"});
        double worst_pf = 0.0;
        for (std::size_t k = 0; k < points; ++k) {
            const SpaceVector q = vec2(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0));
            const double eps = std::pow(10.0, uniform(rng, -4.0, -1.0));
            const PartialFraction r = partial_fraction_identity(q, cfg.mass, eps);
            worst_pf = std::max(worst_pf, r.diff);
            Table::Row row;
            row << q(0) << q(1) << eps << r.lhs << r.rhs << r.diff;
            pf.add(row);
        }
        report.check_at_most("partial-fraction identity max|lhs - rhs| over random points", worst_pf,
                             p.number("partial_fraction_tolerance"));
    }
}

void run_matsubara(const Params &p, RunReport &report) {
    const auto energies = p.numbers("energy");
    const auto betas = p.numbers("beta");
    if (energies.size() != betas.size()) {
        throw ConfigError("energy and beta need the same length");
    }
    const std::size_t thetas = p.count("theta_points");
    if (thetas == 0) {
        throw ConfigError("theta_points must be positive");
    }
    const double tol = p.number("tolerance");
    Table &t = report.table("correlator", {"energy", "beta", "theta", "sum_re", "sum_im", "exact", "abs_diff",
                                           "tail_bound", "mode_cap"});
    for (std::size_t c = 0; c < energies.size(); ++c) {
        const double e = energies[c];
        const double beta = betas[c];
        double worst = 0.0;
        for (std::size_t k = 0; k < thetas; ++k) {
            const double theta = beta * static_cast<double>(k) / static_cast<double>(thetas);
            const MatsubaraResult r = matsubara_correlator(theta, p.count("mode_cap"), e, beta, tol);
            const double exact = thermal_oscillator_exact(theta, e, beta);
            const double diff = std::abs(r.value - exact);
            worst = std::max(worst, diff);
            Table::Row row;
            row << e << beta << theta << r.value << exact << diff << r.tail_bound << r.mode_cap;
            t.add(row);
        }
        report.check_at_most("matsubara E=" + format_short(e) + " beta=" + format_short(beta) +
                                 " max|sum - closed form|",
                             worst, tol);
    }
}

void run_covariance(const Params &p, RunReport &report) {
    PropagatorConfig fine = propagator_config(p);
    PropagatorConfig coarse = fine;
    coarse.resolution = fine.resolution / 2.0;
    const Foliation fol = Foliation::canonical(2);
    const SpaceVector x = vec2(p.number("x_t"), p.number("x_x"));
    const SpaceVector y = vec2(p.number("y_t"), p.number("y_x"));
    const double tol = p.number("tolerance");
    const double floor = p.number("trend_floor");
    Table &t = report.table("covariance", {"rapidity", "resolution", "value_n_re", "value_n_im", "value_boosted_re",
                                           "value_boosted_im", "rel_diff", "change_n", "change_boosted"});
    for (double eta : p.numbers("rapidities")) {
        const BoostMatrix boost = BoostMatrix::boost(2, 1, eta);
        double diffs[2] = {0.0, 0.0};
        int slot = 0;
        for (const PropagatorConfig *cfg : {&coarse, &fine}) {
            const CovarianceReport r = covariance_check(x, y, fol, boost, *cfg);
            diffs[slot++] = r.rel_diff;
            Table::Row row;
            row << eta << cfg->resolution << r.value_n << r.value_boosted << r.rel_diff << r.change_n
                << r.change_boosted;
            t.add(row);
        }
        const std::string tag = "covariance eta=" + format_short(eta);
        report.check_at_most(tag + " rel diff at resolution " + format_short(fine.resolution), diffs[1], tol);
        report.check_at_most(tag + " rel diff at resolution " + format_short(coarse.resolution), diffs[0], tol);
        // Doubling the resolution halves the discrepancy unless it already sits at round-off.
        report.check_at_most(tag + " rel diff after doubling resolution <= max(half, floor)", diffs[1],
                             std::max(diffs[0] / 2.0, floor));
    }
}

void run_bogoliubov(const Params &p, RunReport &report) {
    const double mass = p.number("mass");
    const double tol = p.number("tolerance");
    const std::size_t samples = p.count("samples");
    Rng rng(p.seed());
    auto random_p = [&rng] { return vec2(uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)); };
    auto random_fol = [&rng] { return Foliation::from_rapidity(2, uniform(rng, -1.5, 1.5), uniform(rng, 0.5, 2.0)); };

    Table &t = report.table("samples", {"sample", "p0", "p1", "rapidity", "scale", "homogeneity_ratio",
                                        "energy", "energy_boosted", "alpha", "beta", "alpha2_minus_beta2"});
    double worst_hom = 0.0;
    double worst_inv = 0.0;
    double worst_bog = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const SpaceVector q = random_p();
        const Foliation fol = random_fol();
        const double s = uniform(rng, 0.1, 10.0);
        const double eta = uniform(rng, -1.5, 1.5);
        const BoostMatrix boost = BoostMatrix::boost(2, 1, eta);
        const double e = energy_Ep(q, fol, mass);
        const double ratio = energy_Ep(q, fol.scaled(s), mass) / e;
        const double moved = energy_Ep(boost.apply(q), boost.apply(fol), mass);
        const FoliationBogoliubov b = foliation_bogoliubov(q, fol, random_fol(), mass);
        const double hyper = b.alpha * b.alpha - b.beta * b.beta;
        worst_hom = std::max(worst_hom, std::abs(ratio - s));
        worst_inv = std::max(worst_inv, std::abs(moved - e));
        worst_bog = std::max(worst_bog, std::abs(hyper - 1.0));
        Table::Row row;
        row << k << q(0) << q(1) << eta << s << ratio << e << moved << b.alpha << b.beta << hyper;
        t.add(row);
    }
    report.check_at_most("E_p(s n) / E_p(n) - s, max abs", worst_hom, tol);
    report.check_at_most("E_{Lambda p}(Lambda n) - E_p(n), max abs", worst_inv, tol);
    report.check_at_most("foliation Bogoliubov alpha^2 - beta^2 - 1, max abs", worst_bog, tol);

    // A two-branch foliation register conditioned on |k> against the standalone run.
    const std::size_t d = p.count("d");
    const std::size_t n = p.count("N");
    const double step = p.number("step");
    const ExtendedSpace with_register(d, n, step, 2);
    const ExtendedSpace bare(d, n, step, 1);
    const std::vector<Operator> family{random_hermitian(rng, d), random_hermitian(rng, d)};
    const DiscreteAction controlled = build_controlled_action(with_register, family);
    Table &c = report.table("conditioning", {"branch", "matrix_diff", "correlator_diff"});
    for (std::size_t k = 0; k < family.size(); ++k) {
        const DiscreteAction conditioned = condition_on_register(controlled, k);
        const DiscreteAction standalone = build_action(bare, family[k]);
        const double mdiff = max_abs_diff(conditioned.matrix, standalone.matrix);
        InsertionList ins;
        for (std::size_t s = 1; s <= n; ++s) {
            ins.add(s, random_matrix(rng, d));
        }
        const double cdiff =
            std::abs(extended_correlator(conditioned, ins) - extended_correlator(standalone, ins));
        Table::Row row;
        row << k << mdiff << cdiff;
        c.add(row);
        report.check_at_most("K=2 action conditioned on |" + std::to_string(k) + "> vs K=1 action, max abs",
                             std::max(mdiff, cdiff), tol);
    }
}

void run_vacuum_scaling(const Params &p, RunReport &report) {
    const Foliation fol = Foliation::from_rapidity(2, p.number("rapidity"));
    MomentumGrid grid;
    grid.cutoff = p.number("cutoff");
    grid.points = p.count("points");
    Table &t = report.table("scaling", {"scale", "rho_n", "rho_scaled", "ratio"});
    for (double s : p.numbers("scales")) {
        const VacuumScaling v = vacuum_energy_scaling(fol, s, p.number("mass"), grid);
        Table::Row row;
        row << s << v.rho_n << v.rho_scaled << v.ratio;
        t.add(row);
        report.check_close("vacuum energy ratio at s=" + format_short(s), v.ratio, s,
                           p.number("tolerance") * s);
    }
}

// Plane wave cos(k x - w t) with w^2 = k^2 + m^2, sampled with its canonical momentum.
LatticeField plane_wave(const LatticeGeometry &g, const Foliation &fol, double k, double mass) {
    const double w = std::sqrt(k * k + mass * mass);
    const SpaceVector n = fol.n();
    const double n2 = fol.norm2();
    return LatticeField::sample(
        g, [=](const SpaceVector &x) { return std::cos(k * x(1) - w * x(0)); },
        [=](const SpaceVector &x) {
            const double s = std::sin(k * x(1) - w * x(0));
            return (n(0) * w * s - n(1) * k * s) / n2;
        });
}

double order(double coarse, double fine) {
    return std::log2(coarse / fine);
}

void run_classical_kg(const Params &p, RunReport &report) {
    const double mass = p.number("mass");
    const double k = p.number("wavenumber");
    const auto sizes = p.integers("N");
    if (sizes.size() < 2) {
        throw ConfigError("N needs at least two resolutions");
    }
    const double lo = p.number("order_min");
    const double hi = p.number("order_max");
    const BoostMatrix probe_boost = BoostMatrix::boost(2, 1, p.number("covariance_rapidity"));

    Table &t = report.table("residuals", {"rapidity", "N", "dx", "pi_residual", "phi_residual", "kg_residual",
                                          "covariance_deviation"});
    for (double eta : p.numbers("rapidities")) {
        const Foliation fol = Foliation::from_rapidity(2, eta);
        std::vector<double> pi_res;
        std::vector<double> phi_res;
        std::vector<double> kg_res;
        std::vector<double> cov;
        for (std::int64_t n_raw : sizes) {
            if (n_raw < 8) {
                throw ConfigError("N values must be at least 8");
            }
            const auto n = static_cast<std::size_t>(n_raw);
            const double dx = 2.0 * kPi / (k * static_cast<double>(n));
            const LatticeGeometry g(16, n, dx, dx, 0.3, 0.0);
            const LatticeField f = plane_wave(g, fol, k, mass);
            const ConstraintResidual r = physical_constraint_residual(f, fol, mass);
            pi_res.push_back(r.pi_equation.cwiseAbs().maxCoeff());
            phi_res.push_back(r.phi_equation.cwiseAbs().maxCoeff());
            kg_res.push_back(kg_residual(f, mass).cwiseAbs().maxCoeff());
            cov.push_back(scalar_covariance_check(f, probe_boost, fol, mass).max_deviation);
            Table::Row row;
            row << eta << n << dx << pi_res.back() << phi_res.back() << kg_res.back() << cov.back();
            t.add(row);
        }
        const std::string tag = "eta=" + format_short(eta);
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            const std::string step = " N " + std::to_string(sizes[i - 1]) + "->" + std::to_string(sizes[i]);
            for (const auto &[name, series] : {std::pair{"pi equation", &pi_res}, std::pair{"phi equation", &phi_res},
                                               std::pair{"KG", &kg_res}}) {
                const double o = order((*series)[i - 1], (*series)[i]);
                report.check_at_least(tag + " " + name + " order" + step + " >= " + format_short(lo), o, lo);
                report.check_at_most(tag + " " + name + " order" + step + " <= " + format_short(hi), o, hi);
            }
            report.check_at_least(tag + " scalar covariance shrink" + step, cov[i - 1] / cov[i],
                                  p.number("covariance_shrink"));
        }
    }

    // {phi(x), P0} = n.d phi at a fixed physical point.
    const double len = 8.0;
    const SpaceVector at = vec2(0.5, 0.5);
    const Foliation fol = Foliation::from_rapidity(2, p.number("bracket_rapidity"));
    auto phi = [](const SpaceVector &x) { return std::exp(-(x(0) * x(0) + 2.0 * x(1) * x(1))); };
    auto pi = [](const SpaceVector &x) { return std::exp(-((x(0) - 0.3) * (x(0) - 0.3) + x(1) * x(1))) * x(1); };
    const double exact = phi(at) * (-2.0 * at(0) * fol.n()(0) - 4.0 * at(1) * fol.n()(1));
    Table &b = report.table("p0_bracket", {"N", "dx", "bracket", "n_dot_dphi", "abs_error"});
    std::vector<double> errs;
    for (std::int64_t n_raw : p.integers("bracket_N")) {
        const auto n = static_cast<std::size_t>(n_raw);
        const double dx = len / static_cast<double>(n);
        const double where = (at(0) + len / 2.0) / dx;
        if (n_raw < 8 || std::abs(where - std::round(where)) > 1e-9) {
            throw ConfigError("bracket_N must be multiples of 16 so the probe sits on a site");
        }
        const LatticeGeometry g(n, n, dx, dx, -len / 2.0, -len / 2.0);
        const auto i = static_cast<std::size_t>(std::round(where));
        const LatticeField f = LatticeField::sample(g, phi, pi);
        const QuadraticFunctional br = extended_pb(QuadraticFunctional::phi_at(g, i, i), p0_generator(g, fol));
        const double value = br.evaluate(phase_point(f));
        errs.push_back(std::abs(value - exact));
        Table::Row row;
        row << n << dx << value << exact << errs.back();
        b.add(row);
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
        report.check_at_least("{phi, P0} - n.d phi order at fixed point, step " + std::to_string(i),
                              order(errs[i - 1], errs[i]), lo);
    }
}

void run_pb_generators(const Params &p, RunReport &report) {
    const double mass = p.number("mass");
    const Foliation fol = Foliation::from_rapidity(2, p.number("rapidity"));
    const double len = 8.0;
    auto phi = [](const SpaceVector &x) { return std::exp(-(x(0) * x(0) + 2.0 * x(1) * x(1))); };
    auto pi = [](const SpaceVector &x) { return std::exp(-((x(0) - 0.3) * (x(0) - 0.3) + x(1) * x(1))) * x(1); };
    Table &t = report.table("generators", {"N", "dx", "canonical_error", "jacobi", "boost_variation",
                                           "s_l_bracket", "action_derivative"});
    std::vector<double> variation;
    for (std::int64_t n_raw : p.integers("N")) {
        if (n_raw < 8) {
            throw ConfigError("N values must be at least 8");
        }
        const auto n = static_cast<std::size_t>(n_raw);
        const double dx = len / static_cast<double>(n);
        const LatticeGeometry g(n, n, dx, dx, -len / 2.0, -len / 2.0);
        const Eigen::VectorXd z = phase_point(LatticeField::sample(g, phi, pi));

        const std::size_t i = n / 2;
        const std::size_t j = n / 3;
        const double unit = 1.0 / (dx * dx);
        double canon = std::abs(
            extended_pb(QuadraticFunctional::phi_at(g, i, j), QuadraticFunctional::pi_at(g, i, j)).constant() - unit);
        canon = std::max(canon, extended_pb(QuadraticFunctional::phi_at(g, i, j), QuadraticFunctional::pi_at(g, j, i))
                                    .coefficient_norm());
        canon = std::max(canon,
                         extended_pb(QuadraticFunctional::phi_at(g, i, j), QuadraticFunctional::phi_at(g, j, i))
                             .coefficient_norm());
        canon = std::max(canon, extended_pb(QuadraticFunctional::pi_at(g, i, j), QuadraticFunctional::pi_at(g, j, i))
                                    .coefficient_norm());

        const QuadraticFunctional s = free_action(g, fol, mass);
        const QuadraticFunctional l = boost_generator(g);
        const QuadraticFunctional p0 = p0_generator(g, fol);
        const QuadraticFunctional jac = extended_pb(s, extended_pb(l, p0)) + extended_pb(l, extended_pb(p0, s)) +
                                        extended_pb(p0, extended_pb(s, l));
        const double scale = extended_pb(s, extended_pb(l, p0)).coefficient_norm();
        const double jacobi = jac.coefficient_norm() / scale;

        const QuadraticFunctional sl = extended_pb(s, l);
        const QuadraticFunctional ds = action_foliation_derivative(g, fol, mass);
        const double var = std::abs((sl + ds).evaluate(z));
        variation.push_back(var);
        Table::Row row;
        row << n << dx << canon << jacobi << var << sl.evaluate(z) << ds.evaluate(z);
        t.add(row);
        report.check_at_most("canonical brackets N=" + std::to_string(n) + " max error", canon,
                             p.number("canonical_tolerance") * unit);
        report.check_at_most("Jacobi identity N=" + std::to_string(n) + " relative", jacobi,
                             p.number("jacobi_tolerance"));
    }
    for (std::size_t i = 1; i < variation.size(); ++i) {
        report.check_at_least("{S, L} + dS/d eta shrink factor, step " + std::to_string(i),
                              variation[i - 1] / variation[i], p.number("boost_shrink"));
    }
}

Eigen::Matrix4d random_generator(Rng &rng, std::size_t draw, double scale) {
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu + 1; nu < 4; ++nu) {
            // Alternate pure boosts, pure rotations and mixtures.
            const bool is_boost = mu == 0;
            const std::size_t kind = draw % 3;
            if ((kind == 0 && !is_boost) || (kind == 1 && is_boost)) {
                continue;
            }
            w(mu, nu) = scale * gaussian(rng);
            w(nu, mu) = -w(mu, nu);
        }
    }
    return w;
}

SpaceVector on_shell(Rng &rng, double mass) {
    SpaceVector q(4);
    q << 0.0, uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0);
    q(0) = std::sqrt(mass * mass + q.tail(3).squaredNorm());
    return q;
}

void run_dirac(const Params &p, RunReport &report) {
    const GammaSet g = GammaSet::dirac();
    const double mass = p.number("mass");
    Rng rng(p.seed());

    report.check_at_most("Clifford residual of the Dirac representation", g.clifford_residual(),
                         p.number("clifford_tolerance"));

    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            m(r, c) += cplx(0.3 * gaussian(rng), 0.3 * gaussian(rng));
        }
    }
    // A unitary change of basis keeps psi^dagger gamma^0 the Dirac adjoint.
    const GammaSet h = g.similarity(Eigen::HouseholderQR<Eigen::Matrix4cd>(m).householderQ());

    std::vector<Foliation> foliations;
    for (double eta : p.numbers("rapidities")) {
        SpaceVector n(4);
        n << std::cosh(eta), std::sinh(eta) / std::sqrt(2.0), std::sinh(eta) / std::sqrt(2.0), 0.0;
        foliations.emplace_back(n);
    }
    double slash = 0.0;
    for (const auto &fol : foliations) {
        const Foliation scaled = fol.scaled(p.number("norm_scale"));
        for (const Foliation *f : {&fol, &scaled}) {
            const Matrix4 gn = g.slash(f->n());
            slash = std::max(slash, (gn * gn - f->norm2() * Matrix4::Identity()).cwiseAbs().maxCoeff());
        }
    }
    report.check_at_most("(gamma.n)^2 - ||n||^2 I, max abs", slash, p.number("tolerance"));

    // Representation independence, spot-checked once in the rotated basis.
    {
        double h_slash = 0.0;
        double h_shell = 0.0;
        for (const auto &fol : foliations) {
            const Matrix4 gn = h.slash(fol.scaled(p.number("norm_scale")).n());
            h_slash = std::max(h_slash, (gn * gn - fol.norm2() * p.number("norm_scale") * p.number("norm_scale") *
                                                        Matrix4::Identity())
                                            .cwiseAbs()
                                            .maxCoeff());
            for (std::size_t b = 0; b < 2; ++b) {
                h_shell = std::max(h_shell, dirac_residual(on_shell(rng, mass), mass, b, fol, h).residual);
            }
        }
        const SpinorBoostReport r = spinor_boost_checks(random_generator(rng, 2, p.number("generator_scale")), h);
        report.check_at_most("similar basis: Clifford residual", h.clifford_residual(),
                             p.number("clifford_tolerance"));
        report.check_at_most("similar basis: (gamma.n)^2 - ||n||^2 I, max abs", h_slash, p.number("tolerance"));
        report.check_at_most("similar basis: S^{-1} gamma^mu S - Lambda^mu_nu gamma^nu, max abs",
                             std::max(r.intertwiner_residual, r.adjoint_residual), p.number("tolerance"));
        report.check_at_most("similar basis: on-shell plane-wave residual", h_shell, p.number("residual_tolerance"));
    }

    Table &boosts = report.table("spinor_boosts", {"draw", "kind", "intertwiner_residual", "unitarity_defect",
                                                   "adjoint_residual", "hamiltonian_change"});
    double inter = 0.0;
    double adj = 0.0;
    double diagram = 0.0;
    const char *kinds[] = {"boost", "rotation", "mixed"};
    for (std::size_t k = 0; k < p.count("boosts"); ++k) {
        const Eigen::Matrix4d w = random_generator(rng, k, p.number("generator_scale"));
        const SpinorBoostReport r = spinor_boost_checks(w, g);
        inter = std::max(inter, r.intertwiner_residual);
        adj = std::max(adj, r.adjoint_residual);

        // psi -> S psi, pi -> pi S^{-1}, n -> Lambda n, p -> Lambda p leaves the density unchanged.
        const SpinorBoost sb(w, g);
        const Foliation &fol = foliations[k % foliations.size()];
        const SpaceVector q = on_shell(rng, mass);
        const Spinor psi = dirac_spinor_u(q, mass, k % 2, g);
        const RowSpinor pi = dirac_momentum(dirac_adjoint(psi, g), fol, g);
        const cplx before = dirac_hamiltonian_density(psi, pi, fol, mass, q, g);
        const cplx after = dirac_hamiltonian_density(sb.spinor() * psi, pi * sb.inverse(),
                                                     sb.vector().apply(fol), mass, sb.vector().apply(q), g);
        const double change = std::abs(after - before) / std::max(1.0, std::abs(before));
        diagram = std::max(diagram, change);
        Table::Row row;
        row << k << kinds[k % 3] << r.intertwiner_residual << r.unitarity_defect << r.adjoint_residual << change;
        boosts.add(row);
    }
    report.check_at_most("S^{-1} gamma^mu S - Lambda^mu_nu gamma^nu, max abs", inter, p.number("tolerance"));
    report.check_at_most("gamma^0 S^dagger gamma^0 - S^{-1}, max abs", adj, p.number("tolerance"));
    report.check_at_most("Hamiltonian density under (S psi, pi S^{-1}, Lambda n, Lambda p), max rel change", diagram,
                         p.number("tolerance"));

    Table &shell = report.table("plane_waves", {"foliation", "branch", "residual", "off_shell_residual"});
    double worst = 0.0;
    bool flagged = true;
    for (std::size_t f = 0; f < foliations.size(); ++f) {
        for (std::size_t b = 0; b < 2; ++b) {
            const SpaceVector q = on_shell(rng, mass);
            const DiracResidual on = dirac_residual(q, mass, b, foliations[f], g);
            SpaceVector off = q;
            off(0) += 0.5;
            const DiracResidual bad = dirac_residual(off, mass, b, foliations[f], g);
            worst = std::max(worst, on.residual);
            flagged = flagged && bad.off_shell && !on.off_shell;
            Table::Row row;
            row << f << b << on.residual << bad.residual;
            shell.add(row);
        }
    }
    report.check_at_most("on-shell plane-wave Hamilton residual, max over foliations and branches", worst,
                         p.number("residual_tolerance"));
    report.check_true("shifted p0 is flagged off-shell", flagged);
}

}  // namespace

std::vector<Experiment> field_experiments() {
    const Json required;
    std::vector<ParamSpec> prop = propagator_schema();
    prop.insert(prop.end(),
                {{"seed", ParamKind::integer, required, "random seed for the partial-fraction points"},
                 {"rapidity", ParamKind::number, 0.5, "boost applied to (delta, n) for the value_boosted column"},
                 {"spacelike_r", ParamKind::number_list, Json::array({0.5, 1.0, 1.5, 2.0}), "spacelike separations"},
                 {"timelike_t", ParamKind::number_list, Json::array({0.5, 1.0, 1.5, 2.0}), "timelike separations"},
                 {"oracle_tolerance", ParamKind::number, 1e-7, "quadrature oracle tolerance"},
                 {"tolerance", ParamKind::number, 1e-2, "engine vs oracle relative tolerance"},
                 {"partial_fraction_points", ParamKind::integer, 1000, "random points for the identity"},
                 {"partial_fraction_tolerance", ParamKind::number, 1e-9, "identity tolerance"}});
    std::vector<ParamSpec> cov = propagator_schema();
    cov.insert(cov.end(), {{"rapidities", ParamKind::number_list, Json::array({0.25, 0.5, 1.0}), "boost rapidities"},
                           {"x_t", ParamKind::number, 0.3, "x^0"},
                           {"x_x", ParamKind::number, -0.2, "x^1"},
                           {"y_t", ParamKind::number, -0.2, "y^0"},
                           {"y_x", ParamKind::number, 0.9, "y^1"},
                           {"tolerance", ParamKind::number, 1e-3, "relative tolerance"},
                           {"trend_floor", ParamKind::number, 1e-9, "discrepancy treated as round-off"}});
    return {
        {"propagator", "Mode-engine Feynman propagator against the momentum-integral oracle", prop, run_propagator},
        {"matsubara",
         "Matsubara sum of the single-mode thermal correlator against the closed form",
         {{"energy", ParamKind::number_list, Json::array({1.0, 0.5}), "mode energies"},
          {"beta", ParamKind::number_list, Json::array({2.0, 4.0}), "inverse temperatures"},
          {"theta_points", ParamKind::integer, 10, "theta samples k beta / theta_points"},
          {"mode_cap", ParamKind::integer, 2000, "largest |n| summed"},
          {"tolerance", ParamKind::number, 1e-6, "absolute tolerance"}},
         run_matsubara},
        {"covariance", "Propagator at (x, y, n) against (Lambda x, Lambda y, Lambda n)", cov, run_covariance},
        {"bogoliubov",
         "Foliation algebra: E_p homogeneity and invariance, Bogoliubov identity, register conditioning",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"mass", ParamKind::number, 1.0, "field mass"},
          {"samples", ParamKind::integer, 200, "random (p, n) samples"},
          {"d", ParamKind::integer, 2, "local dimension for conditioning"},
          {"N", ParamKind::integer, 3, "slices for conditioning"},
          {"step", ParamKind::number, 0.3, "time step for conditioning"},
          {"tolerance", ParamKind::number, 1e-12, "absolute tolerance"}},
         run_bogoliubov},
        {"vacuum-scaling",
         "Grid vacuum energy at n and s n",
         {{"mass", ParamKind::number, 1.0, "field mass"},
          {"rapidity", ParamKind::number, 0.3, "rapidity of n"},
          {"scales", ParamKind::number_list, Json::array({0.5, 2.0, 3.0}), "scale factors s"},
          {"cutoff", ParamKind::number, 5.0, "momentum grid half-width"},
          {"points", ParamKind::integer, 41, "grid points per axis"},
          {"tolerance", ParamKind::number, 1e-12, "relative tolerance on the ratio"}},
         run_vacuum_scaling},
        {"classical-kg",
         "Classical lattice: Hamilton and KG residual orders, scalar covariance, {phi, P0}",
         {{"mass", ParamKind::number, 1.0, "field mass"},
          {"wavenumber", ParamKind::number, 1.0, "plane-wave k"},
          {"rapidities", ParamKind::number_list, Json::array({0.0, 0.4}), "foliation rapidities"},
          {"N", ParamKind::integer_list, Json::array({32, 64, 128}), "spatial sites per wavelength"},
          {"order_min", ParamKind::number, 1.9, "lowest accepted order"},
          {"order_max", ParamKind::number, 2.1, "highest accepted order"},
          {"covariance_rapidity", ParamKind::number, 0.7, "boost for the scalar check"},
          {"covariance_shrink", ParamKind::number, 4.0, "required deviation shrink per halving"},
          {"bracket_rapidity", ParamKind::number, 0.3, "foliation for {phi, P0}"},
          {"bracket_N", ParamKind::integer_list, Json::array({32, 64, 128}), "grids for {phi, P0}"}},
         run_classical_kg},
        {"pb-generators",
         "Extended Poisson brackets: canonical relations, Jacobi identity, boost variation of S",
         {{"mass", ParamKind::number, 1.0, "field mass"},
          {"rapidity", ParamKind::number, 0.3, "foliation rapidity"},
          {"N", ParamKind::integer_list, Json::array({16, 32, 64}), "grid sizes"},
          {"canonical_tolerance", ParamKind::number, 1e-12, "relative to 1/(dt dx)"},
          {"jacobi_tolerance", ParamKind::number, 1e-12, "relative Jacobi residual"},
          {"boost_shrink", ParamKind::number, 3.0, "required shrink of {S, L} + dS/d eta per halving"}},
         run_pb_generators},
        {"dirac",
         "Dirac spinors: Clifford algebra, spinor boosts, on-shell Hamilton residuals",
         {{"seed", ParamKind::integer, required, "random seed"},
          {"mass", ParamKind::number, 1.0, "fermion mass"},
          {"rapidities", ParamKind::number_list, Json::array({0.0, 0.4, 1.1}), "foliation rapidities"},
          {"norm_scale", ParamKind::number, 1.7, "extra foliation norm for the (gamma.n)^2 check"},
          {"boosts", ParamKind::integer, 20, "random Lorentz generators"},
          {"generator_scale", ParamKind::number, 0.5, "size of generator entries"},
          {"clifford_tolerance", ParamKind::number, 1e-14, "Clifford residual tolerance"},
          {"tolerance", ParamKind::number, 1e-12, "spinor boost tolerance"},
          {"residual_tolerance", ParamKind::number, 1e-10, "plane-wave residual tolerance"}},
         run_dirac},
    };
}

}  // namespace xtqm::cli
