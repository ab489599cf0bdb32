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

#ifndef QAVG_CIRCUITS_HPP
#define QAVG_CIRCUITS_HPP

#include <string>
#include <vector>

#include "qavg/model.hpp"
#include "qavg/simulator.hpp"

namespace qavg::circuits {

struct RteMode {
    enum class Kind { exact, trotter };
    Kind kind = Kind::exact;
    int steps = 1;  // Trotter slices per application of U

    static RteMode exact() { return {}; }
    static RteMode trotter(int steps);
    /// Parses "exact" or "trotter:<r>".
    static RteMode parse(const std::string &s);
    std::string to_string() const;
    bool operator==(const RteMode &) const = default;
};

struct QpeSettings {
    int n_qft = 3;
    double t0 = 5.0;    // eV^-1
    double e_o = -0.8;  // eV
    int n_settings = 4;
    int shift = 0;
    RteMode rte;

    int n_val() const { return 1 << n_qft; }
    /// E_orig for the current shift: e_o + shift / (n_settings t0).
    double origin() const;
    QpeSettings with_shift(int s) const;
    /// Throws InputError when a field is out of range.
    void validate() const;
};

enum class Variant { phys3a, phys1a, log1a };

const char *to_string(Variant v);
Variant variant_from_string(const std::string &s);

/// Gates realizing control (x) U^power, U = exp(-i 2 pi (H - E_orig) t0 / N_val),
/// on a two-qubit (control, target) pair.
std::vector<sim::Gate> controlled_rte(const model::QubitHamiltonian &h, const QpeSettings &s, int power, int control,
                                      int target);

/// Angle of the semiclassical inverse-QFT correction applied in round `m`
/// when the bit from earlier round `l` is set.
double qft_correction_angle(int m, int l);

/// Four-qubit layout for n_qft = 3: qubit 0 is the system, qubit 1 + k the
/// ancilla for U^(2^k). Round m measures the ancilla of power 2^(n-1-m)
/// into bit m; bit m is weight 2^m of the reading j.
sim::Circuit build_phys3a(const model::QubitHamiltonian &h, const QpeSettings &s, double prep_angle);

/// Two-qubit iterative variant: qubit 0 is the system, qubit 1 the reused
/// ancilla. Same bit order as build_phys3a.
sim::Circuit build_phys1a(const model::QubitHamiltonian &h, const QpeSettings &s, double prep_angle);

/// Dense 4x4 matrix (row major) of a gate list on qubits {0, 1}; basis index
/// b has qubit q in bit q.
std::vector<sim::Amplitude> two_qubit_unitary(const std::vector<sim::Gate> &gates);

}  // namespace qavg::circuits

#endif
