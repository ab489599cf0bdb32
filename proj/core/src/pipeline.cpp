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


#include "qavg/pipeline.hpp"

#include <algorithm>
#include <thread>

#include "qavg/error.hpp"

namespace qavg::pipeline {

namespace {

std::size_t sector_index(model::Excitation xi) {
    return xi == model::Excitation::electron ? 0 : 1;
}

}  // namespace

std::vector<Setting> all_settings(const circuits::QpeSettings &s, const std::vector<int> &shifts) {
    std::vector<int> list = shifts;
    if (list.empty()) {
        for (int i = 0; i < s.n_settings; ++i) {
            list.push_back(i);
        }
    }
    for (int v : list) {
        if (v < 0 || v >= s.n_settings) {
            throw InputError("shift index " + std::to_string(v) + " is outside 0.." +
                             std::to_string(s.n_settings - 1));
        }
    }
    std::vector<Setting> out;
    for (auto xi : {model::Excitation::electron, model::Excitation::hole}) {
        for (auto kappa : {model::Orbital::p, model::Orbital::d}) {
            for (int v : list) {
                out.push_back({xi, kappa, v});
            }
        }
    }
    return out;
}

Workflow::Workflow(const model::DimerParams &d) : dimer_(d), gs_(fci::ground_state(d)) {
    for (auto xi : {model::Excitation::electron, model::Excitation::hole}) {
        tables_[sector_index(xi)] = fci::excitation_table(gs_, d, xi);
        hamiltonians_[sector_index(xi)] = model::qubit_hamiltonian(d, xi);
    }
}

const fci::ExcitationTable &Workflow::table(model::Excitation xi) const {
    return tables_[sector_index(xi)];
}

const model::QubitHamiltonian &Workflow::hamiltonian(model::Excitation xi) const {
    return hamiltonians_[sector_index(xi)];
}

double Workflow::prep_angle(model::Excitation xi, model::Orbital kappa) const {
    return fci::prep_angle(gs_, xi, kappa);
}

steane::LogicalCircuit Workflow::logical_circuit(const Setting &k, const circuits::QpeSettings &s) const {
    return steane::build_log1a(hamiltonian(k.xi), s.with_shift(k.shift), prep_angle(k.xi, k.kappa));
}

sim::Circuit Workflow::circuit(circuits::Variant v, const Setting &k, const circuits::QpeSettings &s) const {
    const auto settings = s.with_shift(k.shift);
    const double angle = prep_angle(k.xi, k.kappa);
    switch (v) {
        case circuits::Variant::phys3a:
            return circuits::build_phys3a(hamiltonian(k.xi), settings, angle);
        case circuits::Variant::phys1a:
            return circuits::build_phys1a(hamiltonian(k.xi), settings, angle);
        case circuits::Variant::log1a:
            return logical_circuit(k, s).circuit;
    }
    throw InternalError("unknown circuit variant");
}

vernier::Histogram Workflow::exact_histogram(circuits::Variant v, const Setting &k,
                                             const circuits::QpeSettings &s) const {
    auto dist = sim::exact_distribution(circuit(v, k, s));
    vernier::Histogram h;
    h.variant = v;
    h.xi = k.xi;
    h.kappa = k.kappa;
    h.settings = s.with_shift(k.shift);
    double total = 0.0;
    for (double p : dist.probabilities) {
        total += p;
    }
    for (double p : dist.probabilities) {
        h.frequencies.push_back(p / total);
    }
    h.validate();
    return h;
}

SampleRun Workflow::sample(circuits::Variant v, const Setting &k, const circuits::QpeSettings &s,
                           const sim::NoiseModel &noise, std::uint64_t shots, std::uint64_t seed, std::uint64_t stream,
                           bool keep_outcomes, unsigned threads) const {
    if (shots == 0) {
        throw InputError("shots must be positive");
    }
    noise.validate();
    const sim::Circuit c = circuit(v, k, s);
    c.validate();
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, shots));

    std::vector<sim::CircuitOutcome> outcomes(shots);
    auto work = [&](unsigned w) {
        for (std::uint64_t i = w; i < shots; i += threads) {
            outcomes[i] = sim::run_shot(c, noise, sim::substream_seed(seed, stream, i));
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(work, w);
        }
    }

    std::vector<std::uint64_t> counts(static_cast<std::size_t>(s.n_val()), 0);
    for (const auto &o : outcomes) {
        if (!o.discarded) {
            ++counts[o.result(c)];
        }
    }
    SampleRun run;
    run.histogram = vernier::Histogram::from_counts(v, k.xi, k.kappa, s.with_shift(k.shift), shots, std::move(counts));
    if (keep_outcomes) {
        run.outcomes = std::move(outcomes);
    }
    return run;
}

std::vector<vernier::Histogram> select(const std::vector<vernier::Histogram> &all, model::Excitation xi) {
    std::vector<vernier::Histogram> out;
    std::copy_if(all.begin(), all.end(), std::back_inserter(out),
                 [xi](const vernier::Histogram &h) { return h.xi == xi; });
    return out;
}

}  // namespace qavg::pipeline
