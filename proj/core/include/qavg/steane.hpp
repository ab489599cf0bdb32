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

#ifndef QAVG_STEANE_HPP
#define QAVG_STEANE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qavg/circuits.hpp"
#include "qavg/model.hpp"
#include "qavg/simulator.hpp"

/// Steane [[7,1,3]] code: encoding, logical gates, offline bit-flip
/// correction and the logical iterative QPE circuit.
namespace qavg::steane {

inline constexpr int kBlockSize = 7;

/// Shared supports of the X- and Z-type generators, as 7-bit masks.
inline constexpr std::array<std::uint8_t, 3> kGeneratorSupports = {0b0001111, 0b0110110, 0b1101100};

/// Weight-3 representative of Z_L (and X_L): qubits {2, 3, 4}.
inline constexpr std::array<int, 3> kLogicalSupport = {2, 3, 4};

struct StabilizerSet {
    std::array<sim::PauliString, 3> x;
    std::array<sim::PauliString, 3> z;

    /// Generators for a block starting at qubit `offset`.
    static StabilizerSet for_block(int offset = 0);
    std::array<sim::PauliString, 6> all() const;
    /// True when all six generators commute pairwise.
    bool commuting() const;
};

sim::PauliString logical_z(int offset = 0);
sim::PauliString logical_x(int offset = 0);

/// Nearest-codeword lookup over all 128 readout strings.
class BfcTable : public sim::ClassicalDecoder {
   public:
    struct Entry {
        std::uint8_t corrected = 0;
        bool logical = false;
        int flipped = -1;
    };

    /// Builds the table from the X-stabilizer group acting on 0000000 and its
    /// X_L image.
    BfcTable();

    static std::shared_ptr<const BfcTable> shared();

    int width() const override { return kBlockSize; }
    sim::DecodeResult decode(std::uint64_t raw) const override;
    const Entry &entry(std::uint8_t bits) const;
    /// Codewords of the logical class `logical` (8 each).
    const std::vector<std::uint8_t> &codewords(bool logical) const { return codewords_[logical ? 1 : 0]; }

   private:
    std::array<Entry, 128> table_{};
    std::array<std::vector<std::uint8_t>, 2> codewords_;
};

struct DecodeOutcome {
    bool logical = false;
    std::optional<int> corrected_bit;
};

/// Bit i of `bits` is the readout of block qubit i.
DecodeOutcome bfc_decode(std::uint8_t bits);

/// Encoder for |0>_L on `block_offset .. block_offset + 6` with a flag qubit
/// check. Appends: encoding gates, flag measurement into `flag_bit`, flag
/// reset and a discard-if-flag marker labelled `checkpoint`.
std::vector<sim::Instruction> build_encoder(int block_offset, int flag_qubit, int flag_bit,
                                            const std::string &checkpoint);

/// Physical expansion of a logical gate. Logical qubit q lives on block
/// `block_offsets[q]`. Throws InputError for unsupported gates.
std::vector<sim::Gate> expand_logical(const sim::Gate &g, const std::vector<int> &block_offsets);

/// exp(-i (theta/2) Z...Z) over `qubits` via a CNOT ladder and one Rzz.
std::vector<sim::Gate> z_string_rotation(const std::vector<int> &qubits, double theta);

/// Checkpoint labels CP0 .. CP6.
std::string checkpoint_label(int k);

struct InjectionSite {
    std::size_t index = 0;  // insert before this instruction
    int qubit = 0;
    std::string description;
};

struct LogicalCircuit {
    sim::Circuit circuit;
    /// Sites where a single X fault must not change the decoded reading.
    std::vector<InjectionSite> injection_sites;
    int system_bit = -1;  // decoded final system readout

    LogicalCircuit() : circuit(1, 0) {}
};

/// Logical iterative QPE. Qubits 0-6: system block, 7-13: ancilla block,
/// 14: flag. Result bits are the decoded ancilla readings, same order as
/// circuits::build_phys1a.
LogicalCircuit build_log1a(const model::QubitHamiltonian &h, const circuits::QpeSettings &s, double prep_angle);

struct CheckpointRow {
    std::string label;
    bool discard_checkpoint = false;
    std::uint64_t reached = 0;  // survivors arriving at the checkpoint
    std::uint64_t local_discards = 0;
    std::uint64_t accumulated_discards = 0;
    std::uint64_t corrections = 0;
    std::uint64_t survivors = 0;  // survivors leaving the checkpoint
    double local_ratio = 0.0;
    double accumulated_ratio = 0.0;
    double correction_ratio = 0.0;
};

struct SurvivalRecord {
    std::uint64_t shots = 0;
    std::vector<CheckpointRow> rows;
};

/// Aggregates log1a outcomes; discards fire at CP0/CP2/CP4 and corrections
/// at CP1/CP3/CP5/CP6.
SurvivalRecord survival_report(const std::vector<sim::CircuitOutcome> &outcomes);

}  // namespace qavg::steane

#endif
