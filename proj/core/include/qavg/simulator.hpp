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

#ifndef QAVG_SIMULATOR_HPP
#define QAVG_SIMULATOR_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qavg::sim {

using Amplitude = std::complex<double>;

/// Largest register the dense engine accepts.
inline constexpr int kMaxQubits = 20;

enum class GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Ry,      // exp(-i angle/2 Y)
    Rz,      // exp(-i angle/2 Z)
    Phase,   // diag(1, e^{i angle})
    CNOT,    // qubits = {control, target}
    Rzz,     // exp(-i angle/2 Z Z)
    CPhase,  // diag(1, 1, 1, e^{i angle})
};

const char *to_string(GateKind kind);
int arity(GateKind kind);

struct Gate {
    GateKind kind = GateKind::H;
    std::array<int, 2> qubits{0, -1};
    double angle = 0.0;

    static Gate one(GateKind kind, int q, double angle = 0.0) { return {kind, {q, -1}, angle}; }
    static Gate two(GateKind kind, int a, int b, double angle = 0.0) { return {kind, {a, b}, angle}; }
};

/// Single-qubit Z-basis measurement recorded into a classical bit.
struct Measure {
    int qubit = 0;
    int bit = 0;
};

/// Measure-and-flip reset to |0>. Nothing is recorded.
struct Reset {
    int qubit = 0;
};

/// Gate applied only when classical `bit` equals `value`.
struct Conditioned {
    Gate gate;
    int bit = 0;
    bool value = true;
};

/// Bookkeeping marker; has no effect on the state.
struct Checkpoint {
    std::string label;
};

/// Abandons the shot when classical `bit` equals `value`.
struct DiscardIf {
    int bit = 0;
    bool value = true;
    std::string checkpoint;
};

struct DecodeResult {
    bool logical = false;
    int flipped = -1;  // index into the decoder inputs, or -1
};

/// Classical post-processing of a block of raw readout bits.
class ClassicalDecoder {
   public:
    virtual ~ClassicalDecoder() = default;
    virtual int width() const = 0;
    /// Bit i of `raw` is the value of input i.
    virtual DecodeResult decode(std::uint64_t raw) const = 0;
};

/// Runs `decoder` on `inputs`, writes the logical value into `output` and
/// records a correction event at `checkpoint` when a bit was flipped.
struct Decode {
    std::vector<int> inputs;
    int output = 0;
    std::string checkpoint;
    std::shared_ptr<const ClassicalDecoder> decoder;
};

using Instruction = std::variant<Gate, Measure, Reset, Conditioned, Checkpoint, DiscardIf, Decode>;

/// An ordered instruction list over a fixed qubit and classical-bit budget.
/// `result_bits` lists the classical bits forming the reported integer,
/// least significant first.
class Circuit {
   public:
    Circuit(int num_qubits, int num_bits);

    int num_qubits() const { return num_qubits_; }
    int num_bits() const { return num_bits_; }
    const std::vector<Instruction> &instructions() const { return instructions_; }
    const std::vector<int> &result_bits() const { return result_bits_; }

    void append(Instruction ins);
    void append(std::span<const Gate> gates);
    void append(std::span<const Instruction> block);
    /// Inserts before position `index` (used for fault injection).
    void insert(std::size_t index, Instruction ins);
    void set_result_bits(std::vector<int> bits);
    int add_bits(int count);

    /// Throws InputError on out-of-range targets or reads of bits that no
    /// earlier instruction writes.
    void validate() const;

   private:
    int num_qubits_;
    int num_bits_;
    std::vector<Instruction> instructions_;
    std::vector<int> result_bits_;
};

/// Pauli operator as X and Z bit masks (both set means Y).
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliString from_string(const std::string &s);
    bool commutes_with(const PauliString &other) const;
};

class StateVector {
   public:
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }

    void apply(const Gate &g);
    double probability_one(int qubit) const;
    /// Projects onto `outcome` and renormalizes. Throws InternalError when the
    /// branch has zero probability.
    void collapse(int qubit, bool outcome, double probability_of_outcome);
    double norm() const;
    double expectation(const PauliString &p) const;
    Amplitude overlap(const StateVector &other) const;

   private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

struct NoiseModel {
    double p1 = 0.0;  // depolarizing after each single-qubit gate
    double p2 = 0.0;  // two-qubit depolarizing after each two-qubit gate
    double pm = 0.0;  // classical readout flip

    static NoiseModel surrogate_default() { return {3e-5, 1e-3, 1e-3}; }
    bool noiseless() const { return p1 == 0.0 && p2 == 0.0 && pm == 0.0; }
    void validate() const;
};

struct CorrectionEvent {
    std::string checkpoint;
    int bit = -1;

    bool operator==(const CorrectionEvent &) const = default;
};

struct CircuitOutcome {
    std::vector<std::uint8_t> bits;
    bool discarded = false;
    std::string discard_checkpoint;
    std::vector<CorrectionEvent> corrections;

    /// Integer assembled from `result_bits` (least significant first).
    std::uint64_t result(const Circuit &c) const;
    bool operator==(const CircuitOutcome &) const = default;
};

/// Simulates one Monte Carlo shot. Deterministic in `seed`.
CircuitOutcome run_shot(const Circuit &c, const NoiseModel &noise, std::uint64_t seed);

/// Exact noiseless outcome statistics obtained by branching on every
/// measurement.
struct ExactDistribution {
    /// Distribution over the result integer, conditioned on acceptance.
    std::vector<double> probabilities;
    double accepted_probability = 1.0;
    std::map<std::string, double> discard_probability;
    std::map<std::string, double> correction_probability;
    std::size_t peak_branches = 0;
};

/// Throws InputError when more than `max_branches` live branches arise.
ExactDistribution exact_distribution(const Circuit &c, std::size_t max_branches = std::size_t{1} << 20);

/// One surviving (non-discarded) branch at the end of a circuit, with its
/// final state. Intended for inspecting small circuits.
struct Branch {
    double probability = 0.0;
    std::vector<std::uint8_t> bits;
    StateVector state;
};

std::vector<Branch> enumerate_branches(const Circuit &c, std::size_t max_branches = std::size_t{1} << 20);

/// Seed for shot `index` of stream `stream` under a run seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace qavg::sim

#endif
