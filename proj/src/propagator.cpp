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

#include "xtqm/propagator.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "xtqm/errors.hpp"
#include "xtqm/parallel.hpp"

namespace xtqm {

namespace {

constexpr double kPi = std::numbers::pi;
// W = exp(-kWindowRadius^2) ~ 7e-17 at the edge of the box.
constexpr double kWindowRadius = 6.1;
const cplx kI(0.0, 1.0);

void require_two_dimensional(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg) {
    cfg.validate();
    if (cfg.dimension != 2 || fol.dim() != 2 || delta.size() != 2) {
        throw InvalidArgument("propagator: quantitative evaluation is implemented for 1+1 dimensions only");
    }
    if (!delta.allFinite()) {
        throw InvalidArgument("propagator: separation has non-finite components");
    }
}

// Half-width of a lab box holding every p with rest-frame Euclidean norm below R cutoff.
double box_half_width(const Foliation &fol, double cutoff) {
    const SpaceVector &n = fol.n();
    return kWindowRadius * cutoff * std::sqrt(n.squaredNorm()) / fol.norm();
}

struct Column {
    cplx fine;
    cplx coarse;
};

class ModeIntegrand {
   public:
    ModeIntegrand(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg)
        : d0_(delta(0)),
          d1_(delta(1)),
          n0_(fol.n()(0)),
          n1_(fol.n()(1)),
          nn_(fol.norm2()),
          m2_(cfg.mass * cfg.mass),
          kappa2_(cfg.cutoff * cfg.cutoff),
          delta_(cfg.eps_reg * fol.norm2()) {
    }

    // i ||n||^2 / (2 E) W e^{-i p.delta}, continued to complex p0.
    cplx weight(cplx p0, double p1) const {
        const cplx pn = p0 * n0_ - p1 * n1_;
        const cplx e = energy(p0, p1);
        const cplx q2 = 2.0 * pn * pn / nn_ - (p0 * p0 - p1 * p1);
        return kI * nn_ / (2.0 * e) * std::exp(-q2 / kappa2_ - kI * (p0 * d0_ - p1 * d1_));
    }
    cplx energy(cplx p0, double p1) const {
        const cplx s = n1_ * p0 - n0_ * p1;
        return std::sqrt(s * s + nn_ * m2_);
    }
    cplx h_plus(cplx p0, double p1) const {
        return p0 * n0_ - p1 * n1_ - energy(p0, p1) + kI * delta_;
    }
    cplx h_minus(cplx p0, double p1) const {
        return p0 * n0_ - p1 * n1_ + energy(p0, p1) - kI * delta_;
    }
    cplx energy_slope(cplx p0, double p1) const {
        return n1_ * (n1_ * p0 - n0_ * p1) / energy(p0, p1);
    }

    // Root of h_plus (upper shell, sign = +1) or h_minus (lower shell, sign = -1).
    cplx pole(double p1, int sign) const {
        const double s = static_cast<double>(sign);
        const cplx a(nn_, 0.0);
        const cplx b = s * 2.0 * kI * delta_ * n0_;
        const cplx c = -s * 2.0 * kI * delta_ * p1 * n1_ - delta_ * delta_ - nn_ * (p1 * p1 + m2_);
        const cplx root = std::sqrt(b * b - 4.0 * a * c);
        const cplx r1 = (-b + root) / (2.0 * a);
        const cplx r2 = (-b - root) / (2.0 * a);
        const double shell = s * std::sqrt(p1 * p1 + m2_);
        cplx z = std::abs(r1 - shell) < std::abs(r2 - shell) ? r1 : r2;
        for (int it = 0; it < 3; ++it) {
            const cplx h = sign > 0 ? h_plus(z, p1) : h_minus(z, p1);
            z -= h / derivative(z, p1, sign);
        }
        return z;
    }
    cplx derivative(cplx p0, double p1, int sign) const {
        return sign > 0 ? n0_ - energy_slope(p0, p1) : n0_ + energy_slope(p0, p1);
    }

    // Real-axis integrand; cheaper than the complex path.
    cplx value(double p0, double p1) const {
        const double pn = p0 * n0_ - p1 * n1_;
        const double s = n1_ * p0 - n0_ * p1;
        const double e = std::sqrt(s * s + nn_ * m2_);
        const double q2 = 2.0 * pn * pn / nn_ - (p0 * p0 - p1 * p1);
        const double w = std::exp(-q2 / kappa2_);
        const double phase = -(p0 * d0_ - p1 * d1_);
        const cplx g = kI * (nn_ / (2.0 * e) * w) * cplx(std::cos(phase), std::sin(phase));
        return g / cplx(pn - e, delta_) - g / cplx(pn + e, -delta_);
    }

   private:
    double d0_;
    double d1_;
    double n0_;
    double n1_;
    double nn_;
    double m2_;
    double kappa2_;
    double delta_;
};

}  // namespace

double momentum_window(const SpaceVector &p, const Foliation &fol, double cutoff) {
    const double pn = mdot(p, fol.n());
    const double q2 = 2.0 * pn * pn / fol.norm2() - mdot(p, p);
    return std::exp(-q2 / (cutoff * cutoff));
}

PropagatorResult propagator_grid(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg) {
    require_two_dimensional(delta, fol, cfg);
    const double half = box_half_width(fol, cfg.cutoff);
    auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half * cfg.resolution));
    intervals += intervals % 2;
    if (intervals + 1 > cfg.max_points_per_axis) {
        throw ResourceError("propagator: cutoff violation after boost; the grid needs " +
                            std::to_string(intervals + 1) + " points per axis");
    }
    const double h = 2.0 * half / static_cast<double>(intervals);
    const ModeIntegrand f(delta, fol, cfg);

    std::vector<Column> columns(intervals + 1);
    parallel_for(intervals + 1, [&](std::size_t col) {
        const double p1 = -half + h * static_cast<double>(col);
        const cplx zp = f.pole(p1, +1);
        const cplx zm = f.pole(p1, -1);
        const cplx cp = f.weight(zp, p1) / f.derivative(zp, p1, +1);
        const cplx cm = f.weight(zm, p1) / f.derivative(zm, p1, -1);
        cplx fine(0.0, 0.0);
        cplx coarse(0.0, 0.0);
        for (std::size_t j = 0; j <= intervals; ++j) {
            const double p0 = -half + h * static_cast<double>(j);
            const cplx r = f.value(p0, p1) - cp / (p0 - zp) + cm / (p0 - zm);
            const double w = (j == 0 || j == intervals) ? 0.5 : 1.0;
            fine += w * r;
            if (j % 2 == 0) {
                coarse += w * r;
            }
        }
        auto log_span = [half](cplx z) { return std::log(half - z) - std::log(-half - z); };
        const cplx exact = cp * log_span(zp) - cm * log_span(zm);
        columns[col] = Column{h * fine + exact, 2.0 * h * coarse + exact};
    });

    cplx fine(0.0, 0.0);
    cplx coarse(0.0, 0.0);
    for (std::size_t col = 0; col <= intervals; ++col) {
        const double w = (col == 0 || col == intervals) ? 0.5 : 1.0;
        fine += w * columns[col].fine;
        if (col % 2 == 0) {
            coarse += w * columns[col].coarse;
        }
    }
    const double norm = 1.0 / (4.0 * kPi * kPi);
    PropagatorResult out;
    out.value = fine * h * norm;
    out.coarse_value = coarse * 2.0 * h * norm;
    out.change = std::abs(out.value - out.coarse_value) / std::abs(out.value);
    out.points_per_axis = intervals + 1;
    out.spacing = h;
    return out;
}

PropagatorResult feynman_propagator(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg) {
    PropagatorResult r = propagator_grid(delta, fol, cfg);
    if (!(r.change <= cfg.tolerance)) {
        throw AccuracyError("feynman_propagator: grid change " + std::to_string(r.change) + " exceeds tolerance",
                            r.change);
    }
    return r;
}

QuadratureResult propagator_oracle(const SpaceVector &delta, const Foliation &fol, const PropagatorConfig &cfg,
                                   double tolerance) {
    require_two_dimensional(delta, fol, cfg);
    const double half = box_half_width(fol, cfg.cutoff);
    const double m2 = cfg.mass * cfg.mass;
    const double eps_o = 2.0 * cfg.mass * cfg.eps_reg;
    // Inner noise must sit well below the outer target or the outer rule keeps refining.
    const QuadratureOptions inner_opts{tolerance * 1e-5, tolerance * 1e-3, 4000};
    const QuadratureOptions outer_opts{tolerance * 1e-2, tolerance, 4000};

    // The real and imaginary outer passes revisit many nodes.
    std::map<double, QuadratureResult> cache;
    double inner_error = 0.0;
    auto outer = [&](double p1) -> cplx {
        auto it = cache.find(p1);
        if (it == cache.end()) {
            const double shell = std::sqrt(p1 * p1 + m2);
            auto integrand = [&](double p0) {
                SpaceVector p(2);
                p << p0, p1;
                const double w = momentum_window(p, fol, cfg.cutoff);
                const double phase = -(p0 * delta(0) - p1 * delta(1));
                return kI * w * cplx(std::cos(phase), std::sin(phase)) / cplx(p0 * p0 - p1 * p1 - m2, eps_o);
            };
            it = cache.emplace(p1, integrate_adaptive(integrand, -half, half, {-shell, shell}, inner_opts)).first;
            inner_error = std::max(inner_error, it->second.error);
        }
        return it->second.value;
    };
    const QuadratureResult total = integrate_adaptive(outer, -half, half, {}, outer_opts);
    const double norm = 1.0 / (4.0 * kPi * kPi);
    return QuadratureResult{total.value * norm, (total.error + 2.0 * half * inner_error) * norm};
}

cplx propagator_closed_form(const SpaceVector &delta, double mass) {
    if (delta.size() != 2) {
        throw InvalidArgument("propagator_closed_form: 1+1 dimensions only");
    }
    const double s2 = mdot(delta, delta);
    if (s2 < 0.0) {
        return {std::cyl_bessel_k(0.0, mass * std::sqrt(-s2)) / (2.0 * kPi), 0.0};
    }
    if (s2 > 0.0) {
        const double x = mass * std::sqrt(s2);
        return {-std::cyl_neumann(0.0, x) / 4.0, -std::cyl_bessel_j(0.0, x) / 4.0};
    }
    throw SingularityError("propagator_closed_form: lightlike separation");
}

CovarianceReport covariance_check(const SpaceVector &x, const SpaceVector &y, const Foliation &fol,
                                  const BoostMatrix &boost, const PropagatorConfig &cfg) {
    if (boost.dim() != fol.dim()) {
        throw InvalidArgument("covariance_check: boost dimension mismatch");
    }
    const SpaceVector delta = x - y;
    const SpaceVector delta_boosted = boost.apply(x) - boost.apply(y);
    const Foliation boosted = boost.apply(fol);
    const PropagatorResult a = propagator_grid(delta, fol, cfg);
    const PropagatorResult b = propagator_grid(delta_boosted, boosted, cfg);
    CovarianceReport out;
    out.value_n = a.value;
    out.value_boosted = b.value;
    out.rel_diff = std::abs(a.value - b.value) / std::abs(a.value);
    out.change_n = a.change;
    out.change_boosted = b.change;
    return out;
}

}  // namespace xtqm
