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

#ifndef QAVG_NELDER_MEAD_HPP
#define QAVG_NELDER_MEAD_HPP

#include <functional>
#include <span>
#include <vector>

namespace qavg::nm {

struct Options {
    int max_iterations = 500;
    /// Stop once the spread of simplex values falls to this level.
    double tolerance = 1e-8;
    /// Edge lengths of the initial simplex, one per coordinate.
    std::vector<double> initial_step;
};

struct Result {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free simplex minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
Result minimize(const Objective &f, std::vector<double> x0, const Options &opt);

}  // namespace qavg::nm

#endif
