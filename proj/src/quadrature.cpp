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

#include "xtqm/quadrature.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "xtqm/errors.hpp"

namespace xtqm {

namespace {

struct Workspace {
    explicit Workspace(std::size_t n) : ptr(gsl_integration_workspace_alloc(n)) {
        if (ptr == nullptr) {
            throw ResourceError("integrate_adaptive: workspace allocation failed");
        }
    }
    ~Workspace() {
        gsl_integration_workspace_free(ptr);
    }
    Workspace(const Workspace &) = delete;
    Workspace &operator=(const Workspace &) = delete;
    gsl_integration_workspace *ptr;
};

struct Part {
    const std::function<std::complex<double>(double)> *f;
    bool imag;
};

double trampoline(double x, void *params) {
    const auto *part = static_cast<const Part *>(params);
    const std::complex<double> v = (*part->f)(x);
    return part->imag ? v.imag() : v.real();
}

void disable_abort_handler() {
    static const bool done = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)done;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)> &f, double a, double b,
                                    std::vector<double> breakpoints, const QuadratureOptions &options) {
    if (!(b > a)) {
        throw InvalidArgument("integrate_adaptive: need a < b");
    }
    disable_abort_handler();
    std::vector<double> pts{a};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double x : breakpoints) {
        if (x > pts.back() && x < b) {
            pts.push_back(x);
        }
    }
    pts.push_back(b);

    Workspace ws(options.limit);
    QuadratureResult out{{0.0, 0.0}, 0.0};
    double parts[2] = {0.0, 0.0};
    const double panel_abs = options.abs_tolerance / static_cast<double>(pts.size() - 1);
    for (int k = 0; k < 2; ++k) {
        Part part{&f, k == 1};
        gsl_function fn{&trampoline, &part};
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double value = 0.0;
            double err = 0.0;
            const int status = gsl_integration_qag(&fn, pts[i], pts[i + 1], panel_abs, options.rel_tolerance,
                                                   options.limit, GSL_INTEG_GAUSS21, ws.ptr, &value, &err);
            // Roundoff warnings are accepted when the estimate still meets the target.
            const bool met = err <= std::max(panel_abs, options.rel_tolerance * std::abs(value));
            if (status != GSL_SUCCESS && !(status == GSL_EROUND && met)) {
                throw AccuracyError(std::string("integrate_adaptive: ") + gsl_strerror(status), err);
            }
            parts[k] += value;
            out.error += err;
        }
    }
    out.value = {parts[0], parts[1]};
    return out;
}

}  // namespace xtqm
