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

#ifndef QAVG_VERNIER_HPP
#define QAVG_VERNIER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qavg/circuits.hpp"
#include "qavg/fci.hpp"
#include "qavg/model.hpp"

/// Fitting of excitation energies from origin-shifted low-resolution QPE
/// histograms.
namespace qavg::vernier {

/// Normalized QPE outcome frequencies for one (variant, sector, orbital,
/// shift). `counts` is empty when the frequencies come from an exact
/// distribution rather than sampling.
struct Histogram {
    circuits::Variant variant = circuits::Variant::phys3a;
    model::Excitation xi = model::Excitation::electron;
    model::Orbital kappa = model::Orbital::p;
    circuits::QpeSettings settings;
    std::uint64_t shots_submitted = 0;
    std::uint64_t shots_accepted = 0;
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;

    /// Builds frequencies from counts.
    static Histogram from_counts(circuits::Variant variant, model::Excitation xi, model::Orbital kappa,
                                 const circuits::QpeSettings &s, std::uint64_t submitted,
                                 std::vector<std::uint64_t> counts);
    /// Throws InputError on length mismatch or unnormalized frequencies.
    void validate() const;
};

struct TrialParams {
    double theta = 0.0;
    double eps0 = 0.0;
    double eps1 = 0.0;
    model::Excitation xi = model::Excitation::electron;
};

enum class Discrepancy { l1, infidelity, nll };

const char *to_string(Discrepancy d);
Discrepancy discrepancy_from_string(const std::string &s);

/// P_j for an eigenvalue `eps`: the normalized Fejer-type profile centered
/// at (eps - E_orig) t0.
std::vector<double> qpe_kernel(double eps, const circuits::QpeSettings &s);

/// Excitation probabilities P_lambda(theta) for orbital kappa.
std::array<double, 2> excitation_probabilities(double theta, model::Orbital kappa, const fci::ExcitationTable &t);

/// Trial distribution: sum over lambda of P_lambda(theta) times the kernel at
/// eps_lambda.
std::vector<double> trial_distribution(const TrialParams &p, model::Orbital kappa, const circuits::QpeSettings &s,
                                       const fci::ExcitationTable &t);

/// Reference distribution from exact excitation probabilities and energies.
std::vector<double> reference_distribution(model::Orbital kappa, const circuits::QpeSettings &s,
                                           const fci::ExcitationTable &t);

/// Half the summed absolute difference; throws InputError on unnormalized
/// or mismatched inputs.
double l1_distance(std::span<const double> a, std::span<const double> b);

double discrepancy(Discrepancy d, std::span<const double> model_p, std::span<const double> data_f);

/// Mean discrepancy over every (shift, orbital) histogram. Every shift
/// present must carry both orbitals.
double cost(const TrialParams &p, std::span<const Histogram> data, const fci::ExcitationTable &t,
            Discrepancy d = Discrepancy::l1);

/// theta mod pi, then swap energies (theta -> theta - pi/2) when eps0 > eps1.
TrialParams canonicalize(const TrialParams &p);

/// Parameters read off an exact excitation table.
TrialParams oracle_params(const fci::ExcitationTable &t);

/// Period of the cost along each energy: N_val / t0.
double energy_period(const circuits::QpeSettings &s);

/// Energy window [low, low + period) centered on h0 of the sector
/// Hamiltonian.
double centered_window_low(const model::QubitHamiltonian &h, const circuits::QpeSettings &s);

struct OptimizeConfig {
    int restarts = 300;
    double tolerance = 1e-8;
    int max_iterations = 500;
    Discrepancy measure = Discrepancy::l1;
    /// Lower edge of the energy search window; defaults to E_orig of shift 0.
    std::optional<double> window_low;
};

struct FitResult {
    TrialParams params;
    double cost = 0.0;
    int restarts = 0;
    int converged = 0;
    double best_cost = 0.0;
    double median_cost = 0.0;
    double window_low = 0.0;
    double window_period = 0.0;
    /// Mean L1 distance of the data to the noiseless reference, when known.
    std::optional<double> reference_l1;
};

/// Multi-restart Nelder-Mead fit. Deterministic in `seed`.
FitResult optimize(std::span<const Histogram> data, const fci::ExcitationTable &t, const OptimizeConfig &config,
                   std::uint64_t seed);

/// Mean L1 distance of each histogram to the exact reference distribution.
double mean_reference_l1(std::span<const Histogram> data, const fci::ExcitationTable &t);

enum class Axis { theta, eps0, eps1 };

const char *to_string(Axis a);
Axis axis_from_string(const std::string &s);

/// A plane through parameter space: `fixed` is held at `fixed_value`, the
/// other two parameters (in theta, eps0, eps1 order) span the grid.
struct PlaneSpec {
    Axis fixed = Axis::theta;
    double fixed_value = 0.0;
    int resolution = 200;
    /// Lower edge of each energy axis; the range is one period.
    double window_low = 0.0;
};

struct Landscape {
    PlaneSpec plane;
    std::vector<double> x;  // first free axis
    std::vector<double> y;  // second free axis
    std::vector<double> values;  // values[i * y.size() + j] at (x[i], y[j])
    int strict_minima = 0;
};

/// Dense cost grid over a plane; the energy period comes from the data.
Landscape landscape_scan(std::span<const Histogram> data, const fci::ExcitationTable &t, const PlaneSpec &plane,
                         Discrepancy d = Discrepancy::l1);

/// Cells strictly below all 8 neighbours, with both axes periodic.
int count_strict_minima(std::span<const double> values, int nx, int ny);

}  // namespace qavg::vernier

#endif
