// Copyright 2026 The qavg Authors
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

#include "qavg/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qavg/error.hpp"

namespace qavg::nm {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

std::vector<double> affine(const std::vector<double> &a, const std::vector<double> &b, double t) {
    // a + t (b - a)
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
    return out;
}

}  // namespace

Result minimize(const Objective &f, std::vector<double> x0, const Options &opt) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw InputError("Nelder-Mead needs at least one coordinate");
    }
    if (opt.initial_step.size() != n) {
        throw InputError("initial simplex step count does not match the dimension");
    }
    if (opt.max_iterations < 1 || !(opt.tolerance >= 0)) {
        throw InputError("bad Nelder-Mead options");
    }
    auto eval = [&](const std::vector<double> &x) {
        double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Vertex> simplex;
    simplex.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = x0;
        x[i] += opt.initial_step[i];
        simplex.push_back({x, eval(x)});
    }

    Result res;
    auto by_value = [](const Vertex &a, const Vertex &b) { return a.f < b.f; };
    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        std::sort(simplex.begin(), simplex.end(), by_value);
        if (simplex.back().f - simplex.front().f <= opt.tolerance) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += simplex[k].x[i] / static_cast<double>(n);
            }
        }
        Vertex &worst = simplex.back();
        std::vector<double> xr = affine(centroid, worst.x, -1.0);
        double fr = eval(xr);
        if (fr < simplex.front().f) {
            std::vector<double> xe = affine(centroid, worst.x, -2.0);
            double fe = eval(xe);
            worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr < simplex[n - 1].f) {
            worst = {xr, fr};
            continue;
        }
        bool outside = fr < worst.f;
        std::vector<double> xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, worst.x, 0.5);
        double fc = eval(xc);
        if (fc < (outside ? fr : worst.f)) {
            worst = {xc, fc};
            continue;
        }
        for (std::size_t k = 1; k <= n; ++k) {
            simplex[k].x = affine(simplex[0].x, simplex[k].x, 0.5);
            simplex[k].f = eval(simplex[k].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_value);
    res.x = simplex.front().x;
    res.value = simplex.front().f;
    return res;
}

}  // namespace qavg::nm
