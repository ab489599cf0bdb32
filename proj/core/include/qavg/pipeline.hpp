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


#ifndef QAVG_PIPELINE_HPP
#define QAVG_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "qavg/circuits.hpp"
#include "qavg/fci.hpp"
#include "qavg/model.hpp"
#include "qavg/simulator.hpp"
#include "qavg/steane.hpp"
#include "qavg/vernier.hpp"

/// Glue between the model, the circuits and the fitting core: one object per
/// dimer that builds circuits and histograms for every (sector, orbital,
/// shift) combination.
namespace qavg::pipeline {

struct Setting {
    model::Excitation xi = model::Excitation::electron;
    model::Orbital kappa = model::Orbital::p;
    int shift = 0;
};

/// All combinations in (sector, orbital, shift) order. An empty `shifts`
/// means 0 .. n_settings - 1.
std::vector<Setting> all_settings(const circuits::QpeSettings &s, const std::vector<int> &shifts = {});

struct SampleRun {
    vernier::Histogram histogram;
    /// Per-shot records, kept only when requested.
    std::vector<sim::CircuitOutcome> outcomes;
};

class Workflow {
   public:
    explicit Workflow(const model::DimerParams &d);

    const model::DimerParams &dimer() const { return dimer_; }
    const fci::GroundState &ground_state() const { return gs_; }
    const fci::ExcitationTable &table(model::Excitation xi) const;
    const model::QubitHamiltonian &hamiltonian(model::Excitation xi) const;
    double prep_angle(model::Excitation xi, model::Orbital kappa) const;

    /// Circuit for one setting; for log1a this is the logical circuit.
    sim::Circuit circuit(circuits::Variant v, const Setting &k, const circuits::QpeSettings &s) const;
    steane::LogicalCircuit logical_circuit(const Setting &k, const circuits::QpeSettings &s) const;

    /// Noiseless outcome distribution of the reading, as a histogram with no
    /// counts.
    vernier::Histogram exact_histogram(circuits::Variant v, const Setting &k, const circuits::QpeSettings &s) const;

    /// Monte Carlo histogram. Shot i uses substream (seed, stream, i), so the
    /// result does not depend on `threads`. `threads` = 0 picks the hardware
    /// concurrency.
    SampleRun sample(circuits::Variant v, const Setting &k, const circuits::QpeSettings &s,
                     const sim::NoiseModel &noise, std::uint64_t shots, std::uint64_t seed, std::uint64_t stream,
                     bool keep_outcomes = false, unsigned threads = 0) const;

   private:
    model::DimerParams dimer_;
    fci::GroundState gs_;
    std::array<fci::ExcitationTable, 2> tables_;
    std::array<model::QubitHamiltonian, 2> hamiltonians_;
};

/// Histograms of one sector.
std::vector<vernier::Histogram> select(const std::vector<vernier::Histogram> &all, model::Excitation xi);

}  // namespace qavg::pipeline

#endif
