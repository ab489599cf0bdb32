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

#include "qavg/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "qavg/error.hpp"

namespace qavg::sim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
// Conditional outcome probabilities below this are dropped during branching.
constexpr double kDropProbability = 1e-14;
constexpr double kMergeFidelity = 1.0 - 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using Mat = std::array<Amplitude, 4>;  // row major 2x2

// Plain complex product; std::complex operator* carries inf/nan recovery
// that dominates the inner loops.
inline Amplitude mul(Amplitude a, Amplitude b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Index with a zero bit inserted at position q.
inline std::size_t insert_zero(std::size_t i, int q) {
    const std::size_t low = (std::size_t{1} << q) - 1;
    return ((i & ~low) << 1) | (i & low);
}

// Index with zero bits inserted at positions lo < hi.
inline std::size_t insert_zeros(std::size_t i, int lo, int hi) {
    return insert_zero(insert_zero(i, lo), hi);
}

void apply_matrix(std::vector<Amplitude> &a, int q, const Mat &m) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t n = a.size();
    for (std::size_t hi = 0; hi < n; hi += 2 * stride) {
        for (std::size_t i = hi; i < hi + stride; ++i) {
            Amplitude x = a[i];
            Amplitude y = a[i + stride];
            a[i] = mul(m[0], x) + mul(m[1], y);
            a[i + stride] = mul(m[2], x) + mul(m[3], y);
        }
    }
}

void apply_real_matrix(std::vector<Amplitude> &a, int q, double m0, double m1, double m2, double m3) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t n = a.size();
    for (std::size_t hi = 0; hi < n; hi += 2 * stride) {
        for (std::size_t i = hi; i < hi + stride; ++i) {
            Amplitude x = a[i];
            Amplitude y = a[i + stride];
            a[i] = m0 * x + m1 * y;
            a[i + stride] = m2 * x + m3 * y;
        }
    }
}

void apply_diag(std::vector<Amplitude> &a, int q, Amplitude d0, Amplitude d1) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t n = a.size();
    const bool skip_low = d0 == Amplitude{1.0, 0.0};
    for (std::size_t hi = 0; hi < n; hi += 2 * stride) {
        if (!skip_low) {
            for (std::size_t i = hi; i < hi + stride; ++i) {
                a[i] = mul(a[i], d0);
            }
        }
        for (std::size_t i = hi + stride; i < hi + 2 * stride; ++i) {
            a[i] = mul(a[i], d1);
        }
    }
}

std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void check_qubit(int q, int n, const char *what) {
    if (q < 0 || q >= n) {
        throw InputError(std::string(what) + " targets qubit " + std::to_string(q) + " outside register of " +
                         std::to_string(n));
    }
}

void check_bit(int b, int n, const char *what) {
    if (b < 0 || b >= n) {
        throw InputError(std::string(what) + " uses classical bit " + std::to_string(b) + " outside range " +
                         std::to_string(n));
    }
}

void check_gate(const Gate &g, int n) {
    check_qubit(g.qubits[0], n, to_string(g.kind));
    if (arity(g.kind) == 2) {
        check_qubit(g.qubits[1], n, to_string(g.kind));
        if (g.qubits[0] == g.qubits[1]) {
            throw InputError(std::string(to_string(g.kind)) + " needs two distinct qubits");
        }
    }
    if (!std::isfinite(g.angle)) {
        throw InputError(std::string(to_string(g.kind)) + " has a non-finite angle");
    }
}

// Pauli index 0..3 = I, X, Y, Z.
void apply_pauli(StateVector &s, int q, int which) {
    static constexpr GateKind kinds[4] = {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z};
    if (which != 0) {
        s.apply(Gate::one(kinds[which], q));
    }
}

}  // namespace

const char *to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::Sdg:
            return "S_DAG";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::Ry:
            return "RY";
        case GateKind::Rz:
            return "RZ";
        case GateKind::Phase:
            return "PHASE";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::Rzz:
            return "RZZ";
        case GateKind::CPhase:
            return "CPHASE";
    }
    return "?";
}

int arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::Rzz:
        case GateKind::CPhase:
            return 2;
        default:
            return 1;
    }
}

Circuit::Circuit(int num_qubits, int num_bits) : num_qubits_(num_qubits), num_bits_(num_bits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InputError("circuit needs between 1 and " + std::to_string(kMaxQubits) + " qubits, got " +
                         std::to_string(num_qubits));
    }
    if (num_bits < 0) {
        throw InputError("negative classical bit count");
    }
}

void Circuit::append(Instruction ins) {
    instructions_.push_back(std::move(ins));
}

void Circuit::append(std::span<const Gate> gates) {
    for (const Gate &g : gates) {
        instructions_.emplace_back(g);
    }
}

void Circuit::append(std::span<const Instruction> block) {
    instructions_.insert(instructions_.end(), block.begin(), block.end());
}

void Circuit::insert(std::size_t index, Instruction ins) {
    if (index > instructions_.size()) {
        throw InputError("insertion index past end of circuit");
    }
    instructions_.insert(instructions_.begin() + static_cast<std::ptrdiff_t>(index), std::move(ins));
}

void Circuit::set_result_bits(std::vector<int> bits) {
    for (int b : bits) {
        check_bit(b, num_bits_, "result");
    }
    result_bits_ = std::move(bits);
}

int Circuit::add_bits(int count) {
    int first = num_bits_;
    num_bits_ += count;
    return first;
}

void Circuit::validate() const {
    std::vector<bool> written(static_cast<std::size_t>(num_bits_), false);
    auto read = [&](int b, const char *what) {
        check_bit(b, num_bits_, what);
        if (!written[static_cast<std::size_t>(b)]) {
            throw InputError(std::string(what) + " reads classical bit " + std::to_string(b) +
                             " before it is written");
        }
    };
    for (const Instruction &ins : instructions_) {
        std::visit(Overloaded{
                       [&](const Gate &g) { check_gate(g, num_qubits_); },
                       [&](const Measure &m) {
                           check_qubit(m.qubit, num_qubits_, "measurement");
                           check_bit(m.bit, num_bits_, "measurement");
                           written[static_cast<std::size_t>(m.bit)] = true;
                       },
                       [&](const Reset &r) { check_qubit(r.qubit, num_qubits_, "reset"); },
                       [&](const Conditioned &c) {
                           check_gate(c.gate, num_qubits_);
                           read(c.bit, "conditioned gate");
                       },
                       [&](const Checkpoint &) {},
                       [&](const DiscardIf &d) { read(d.bit, "discard"); },
                       [&](const Decode &d) {
                           if (!d.decoder) {
                               throw InputError("decode instruction without a decoder");
                           }
                           if (static_cast<int>(d.inputs.size()) != d.decoder->width()) {
                               throw InputError("decode instruction input count does not match decoder width");
                           }
                           for (int b : d.inputs) {
                               read(b, "decode");
                           }
                           check_bit(d.output, num_bits_, "decode");
                           written[static_cast<std::size_t>(d.output)] = true;
                       },
                   },
                   ins);
    }
    for (int b : result_bits_) {
        read(b, "result");
    }
}

PauliString PauliString::from_string(const std::string &s) {
    if (s.size() > 64) {
        throw InputError("Pauli string longer than 64 qubits");
    }
    PauliString p;
    for (std::size_t q = 0; q < s.size(); ++q) {
        std::uint64_t bit = std::uint64_t{1} << q;
        switch (s[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x |= bit;
                break;
            case 'Y':
                p.x |= bit;
                p.z |= bit;
                break;
            case 'Z':
                p.z |= bit;
                break;
            default:
                throw InputError(std::string("bad Pauli character '") + s[q] + "'");
        }
    }
    return p;
}

bool PauliString::commutes_with(const PauliString &o) const {
    return (std::popcount((x & o.z) ^ (z & o.x)) & 1) == 0;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InputError("state vector needs between 1 and " + std::to_string(kMaxQubits) + " qubits");
    }
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
    amps_[0] = 1.0;
}

void StateVector::apply(const Gate &g) {
    const int q = g.qubits[0];
    const Amplitude I{0.0, 1.0};
    switch (g.kind) {
        case GateKind::H:
            apply_real_matrix(amps_, q, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
            return;
        case GateKind::S:
            apply_diag(amps_, q, 1.0, I);
            return;
        case GateKind::Sdg:
            apply_diag(amps_, q, 1.0, -I);
            return;
        case GateKind::Z:
            apply_diag(amps_, q, 1.0, -1.0);
            return;
        case GateKind::Phase:
            apply_diag(amps_, q, 1.0, std::polar(1.0, g.angle));
            return;
        case GateKind::Rz:
            apply_diag(amps_, q, std::polar(1.0, -g.angle / 2), std::polar(1.0, g.angle / 2));
            return;
        case GateKind::X: {
            const std::size_t stride = std::size_t{1} << q;
            for (std::size_t hi = 0; hi < amps_.size(); hi += 2 * stride) {
                for (std::size_t i = hi; i < hi + stride; ++i) {
                    std::swap(amps_[i], amps_[i + stride]);
                }
            }
            return;
        }
        case GateKind::Y:
            apply_matrix(amps_, q, {0.0, -I, I, 0.0});
            return;
        case GateKind::Ry: {
            double c = std::cos(g.angle / 2);
            double s = std::sin(g.angle / 2);
            apply_real_matrix(amps_, q, c, -s, s, c);
            return;
        }
        default:
            break;
    }

    // Two-qubit gates: enumerate the quarter of indices with both bits clear.
    const int a = g.qubits[0];
    const int b = g.qubits[1];
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    const std::size_t am = std::size_t{1} << a;
    const std::size_t bm = std::size_t{1} << b;
    const std::size_t quarter = amps_.size() >> 2;
    switch (g.kind) {
        case GateKind::CNOT:
            for (std::size_t k = 0; k < quarter; ++k) {
                const std::size_t i = insert_zeros(k, lo, hi) | am;
                std::swap(amps_[i], amps_[i | bm]);
            }
            return;
        case GateKind::Rzz: {
            const Amplitude even = std::polar(1.0, -g.angle / 2);
            const Amplitude odd = std::polar(1.0, g.angle / 2);
            for (std::size_t k = 0; k < quarter; ++k) {
                const std::size_t i = insert_zeros(k, lo, hi);
                amps_[i] = mul(amps_[i], even);
                amps_[i | am] = mul(amps_[i | am], odd);
                amps_[i | bm] = mul(amps_[i | bm], odd);
                amps_[i | am | bm] = mul(amps_[i | am | bm], even);
            }
            return;
        }
        case GateKind::CPhase: {
            const Amplitude ph = std::polar(1.0, g.angle);
            for (std::size_t k = 0; k < quarter; ++k) {
                const std::size_t i = insert_zeros(k, lo, hi) | am | bm;
                amps_[i] = mul(amps_[i], ph);
            }
            return;
        }
        default:
            break;
    }
    throw InternalError("unhandled gate kind");
}

double StateVector::probability_one(int qubit) const {
    const std::size_t stride = std::size_t{1} << qubit;
    double p = 0.0;
    for (std::size_t hi = stride; hi < amps_.size(); hi += 2 * stride) {
        for (std::size_t i = hi; i < hi + stride; ++i) {
            p += std::norm(amps_[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

void StateVector::collapse(int qubit, bool outcome, double probability_of_outcome) {
    if (!(probability_of_outcome > 0.0)) {
        throw InternalError("collapse onto a zero-probability outcome");
    }
    const std::size_t stride = std::size_t{1} << qubit;
    const double scale = 1.0 / std::sqrt(probability_of_outcome);
    for (std::size_t hi = 0; hi < amps_.size(); hi += 2 * stride) {
        Amplitude *keep = &amps_[hi + (outcome ? stride : 0)];
        Amplitude *drop = &amps_[hi + (outcome ? 0 : stride)];
        for (std::size_t i = 0; i < stride; ++i) {
            keep[i] *= scale;
            drop[i] = 0.0;
        }
    }
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Amplitude &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

double StateVector::expectation(const PauliString &p) const {
    const std::uint64_t limit = amps_.size();
    if ((p.x | p.z) >= limit) {
        throw InputError("Pauli string acts outside the register");
    }
    static const Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Amplitude yphase = kIPow[std::popcount(p.x & p.z) & 3];
    Amplitude acc{};
    for (std::uint64_t s = 0; s < limit; ++s) {
        double sign = (std::popcount(s & p.z) & 1) ? -1.0 : 1.0;
        acc += std::conj(amps_[s ^ p.x]) * amps_[s] * sign;
    }
    return (acc * yphase).real();
}

Amplitude StateVector::overlap(const StateVector &other) const {
    if (other.amps_.size() != amps_.size()) {
        throw InputError("overlap between registers of different size");
    }
    Amplitude acc{};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

void NoiseModel::validate() const {
    for (double p : {p1, p2, pm}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InputError("noise probabilities must lie in [0, 1]");
        }
    }
}

std::uint64_t CircuitOutcome::result(const Circuit &c) const {
    std::uint64_t r = 0;
    const auto &rb = c.result_bits();
    for (std::size_t k = 0; k < rb.size(); ++k) {
        if (bits[static_cast<std::size_t>(rb[k])]) {
            r |= std::uint64_t{1} << k;
        }
    }
    return r;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0xD1B54A32D192ED03ULL);
    std::uint64_t b = splitmix64(s);
    s = b ^ (index * 0x8CB92BA72F3D8DD7ULL);
    return splitmix64(s);
}

CircuitOutcome run_shot(const Circuit &c, const NoiseModel &noise, std::uint64_t seed) {
    noise.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    StateVector state(c.num_qubits());
    CircuitOutcome out;
    out.bits.assign(static_cast<std::size_t>(c.num_bits()), 0);

    auto gate_with_noise = [&](const Gate &g) {
        state.apply(g);
        if (arity(g.kind) == 1) {
            if (noise.p1 > 0 && uniform(rng) < noise.p1) {
                apply_pauli(state, g.qubits[0], 1 + static_cast<int>(rng() % 3));
            }
        } else if (noise.p2 > 0 && uniform(rng) < noise.p2) {
            int which = 1 + static_cast<int>(rng() % 15);
            apply_pauli(state, g.qubits[0], which & 3);
            apply_pauli(state, g.qubits[1], which >> 2);
        }
    };
    auto measure = [&](int q) {
        double p1 = state.probability_one(q);
        bool outcome = uniform(rng) < p1;
        state.collapse(q, outcome, outcome ? p1 : 1.0 - p1);
        return outcome;
    };

    for (const Instruction &ins : c.instructions()) {
        bool stop = false;
        std::visit(Overloaded{
                       [&](const Gate &g) { gate_with_noise(g); },
                       [&](const Measure &m) {
                           bool v = measure(m.qubit);
                           if (noise.pm > 0 && uniform(rng) < noise.pm) {
                               v = !v;
                           }
                           out.bits[static_cast<std::size_t>(m.bit)] = v;
                       },
                       [&](const Reset &r) {
                           if (measure(r.qubit)) {
                               state.apply(Gate::one(GateKind::X, r.qubit));
                           }
                       },
                       [&](const Conditioned &cg) {
                           if (static_cast<bool>(out.bits[static_cast<std::size_t>(cg.bit)]) == cg.value) {
                               gate_with_noise(cg.gate);
                           }
                       },
                       [&](const Checkpoint &) {},
                       [&](const DiscardIf &d) {
                           if (static_cast<bool>(out.bits[static_cast<std::size_t>(d.bit)]) == d.value) {
                               out.discarded = true;
                               out.discard_checkpoint = d.checkpoint;
                               stop = true;
                           }
                       },
                       [&](const Decode &d) {
                           std::uint64_t raw = 0;
                           for (std::size_t k = 0; k < d.inputs.size(); ++k) {
                               if (out.bits[static_cast<std::size_t>(d.inputs[k])]) {
                                   raw |= std::uint64_t{1} << k;
                               }
                           }
                           DecodeResult r = d.decoder->decode(raw);
                           out.bits[static_cast<std::size_t>(d.output)] = r.logical;
                           if (r.flipped >= 0) {
                               out.corrections.push_back({d.checkpoint, r.flipped});
                           }
                       },
                   },
                   ins);
        if (stop) {
            break;
        }
    }
    return out;
}

namespace {

struct QBranch {
    double probability;
    std::vector<std::uint8_t> bits;
    StateVector state;
};

struct Accumulators {
    std::map<std::string, double> discard;
    std::map<std::string, double> correction;
    std::size_t peak = 0;
};

bool is_quantum(const Instruction &ins) {
    return std::holds_alternative<Gate>(ins) || std::holds_alternative<Reset>(ins) ||
           std::holds_alternative<Conditioned>(ins);
}

// live[i] = classical bits still read at or after instruction i + 1.
std::vector<std::vector<bool>> liveness(const Circuit &c) {
    const auto &ins = c.instructions();
    std::vector<std::vector<bool>> live_after(ins.size());
    std::vector<bool> live(static_cast<std::size_t>(c.num_bits()), false);
    for (int b : c.result_bits()) {
        live[static_cast<std::size_t>(b)] = true;
    }
    for (std::size_t i = ins.size(); i-- > 0;) {
        live_after[i] = live;
        std::visit(Overloaded{
                       [&](const Measure &m) { live[static_cast<std::size_t>(m.bit)] = false; },
                       [&](const Conditioned &cg) { live[static_cast<std::size_t>(cg.bit)] = true; },
                       [&](const DiscardIf &d) { live[static_cast<std::size_t>(d.bit)] = true; },
                       [&](const Decode &d) {
                           live[static_cast<std::size_t>(d.output)] = false;
                           for (int b : d.inputs) {
                               live[static_cast<std::size_t>(b)] = true;
                           }
                       },
                       [&](const auto &) {},
                   },
                   ins[i]);
    }
    return live_after;
}

void merge_branches(std::vector<QBranch> &branches, const std::vector<bool> &live) {
    if (branches.size() < 2) {
        return;
    }
    auto key_less = [&](const QBranch &a, const QBranch &b) {
        for (std::size_t k = 0; k < live.size(); ++k) {
            if (live[k] && a.bits[k] != b.bits[k]) {
                return a.bits[k] < b.bits[k];
            }
        }
        return false;
    };
    auto key_equal = [&](const QBranch &a, const QBranch &b) { return !key_less(a, b) && !key_less(b, a); };
    std::stable_sort(branches.begin(), branches.end(), key_less);
    std::vector<QBranch> merged;
    merged.reserve(branches.size());
    std::size_t group_start = 0;
    for (QBranch &b : branches) {
        if (!merged.empty() && !key_equal(merged[group_start], b)) {
            group_start = merged.size();
        }
        bool absorbed = false;
        for (std::size_t r = group_start; r < merged.size(); ++r) {
            if (std::abs(merged[r].state.overlap(b.state)) >= kMergeFidelity) {
                merged[r].probability += b.probability;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) {
            merged.push_back(std::move(b));
        }
    }
    branches = std::move(merged);
}

void apply_decode(const Decode &d, std::vector<std::uint8_t> &bits, double probability, Accumulators &acc) {
    std::uint64_t raw = 0;
    for (std::size_t k = 0; k < d.inputs.size(); ++k) {
        if (bits[static_cast<std::size_t>(d.inputs[k])]) {
            raw |= std::uint64_t{1} << k;
        }
    }
    DecodeResult r = d.decoder->decode(raw);
    bits[static_cast<std::size_t>(d.output)] = r.logical;
    if (r.flipped >= 0) {
        acc.correction[d.checkpoint] += probability;
    }
}

// Runs instructions [0, stop) with full branching on every measurement.
std::vector<QBranch> branch_quantum(const Circuit &c, std::size_t stop, std::size_t max_branches,
                                    Accumulators &acc) {
    const auto &ins = c.instructions();
    const auto live_after = liveness(c);
    std::vector<QBranch> branches;
    branches.push_back({1.0, std::vector<std::uint8_t>(static_cast<std::size_t>(c.num_bits()), 0),
                        StateVector(c.num_qubits())});

    auto split = [&](int qubit, int bit, bool reset) {
        std::vector<QBranch> next;
        next.reserve(branches.size() * 2);
        for (QBranch &b : branches) {
            double p1 = b.state.probability_one(qubit);
            for (int v = 0; v < 2; ++v) {
                double pv = v ? p1 : 1.0 - p1;
                if (pv < kDropProbability) {
                    continue;
                }
                // The second outcome may reuse the parent when the first was dropped.
                bool last = v == 1 || p1 < kDropProbability;
                QBranch child = last ? std::move(b) : QBranch{b.probability, b.bits, b.state};
                child.state.collapse(qubit, v, pv);
                child.probability *= pv;
                if (bit >= 0) {
                    child.bits[static_cast<std::size_t>(bit)] = static_cast<std::uint8_t>(v);
                }
                if (reset && v) {
                    child.state.apply(Gate::one(GateKind::X, qubit));
                }
                next.push_back(std::move(child));
            }
        }
        branches = std::move(next);
        if (branches.size() > max_branches) {
            throw InputError("exact enumeration exceeded " + std::to_string(max_branches) + " branches");
        }
        acc.peak = std::max(acc.peak, branches.size());
    };

    for (std::size_t i = 0; i < stop; ++i) {
        bool merge = false;
        std::visit(Overloaded{
                       [&](const Gate &g) {
                           for (QBranch &b : branches) {
                               b.state.apply(g);
                           }
                       },
                       [&](const Measure &m) {
                           split(m.qubit, m.bit, false);
                           merge = true;
                       },
                       [&](const Reset &r) {
                           split(r.qubit, -1, true);
                           merge = true;
                       },
                       [&](const Conditioned &cg) {
                           for (QBranch &b : branches) {
                               if (static_cast<bool>(b.bits[static_cast<std::size_t>(cg.bit)]) == cg.value) {
                                   b.state.apply(cg.gate);
                               }
                           }
                       },
                       [&](const Checkpoint &) {},
                       [&](const DiscardIf &d) {
                           std::erase_if(branches, [&](const QBranch &b) {
                               if (static_cast<bool>(b.bits[static_cast<std::size_t>(d.bit)]) == d.value) {
                                   acc.discard[d.checkpoint] += b.probability;
                                   return true;
                               }
                               return false;
                           });
                           merge = true;
                       },
                       [&](const Decode &d) {
                           for (QBranch &b : branches) {
                               apply_decode(d, b.bits, b.probability, acc);
                           }
                           merge = true;
                       },
                   },
                   ins[i]);
        if (merge) {
            merge_branches(branches, live_after[i]);
        }
    }
    return branches;
}

}  // namespace

ExactDistribution exact_distribution(const Circuit &c, std::size_t max_branches) {
    c.validate();
    if (c.result_bits().size() > 24) {
        throw InputError("too many result bits for an exact distribution");
    }
    const auto &ins = c.instructions();
    // The classical tail (measurements, decoding, discards after the last
    // quantum operation) is evaluated from the joint readout distribution.
    std::size_t tail = ins.size();
    while (tail > 0 && !is_quantum(ins[tail - 1])) {
        --tail;
    }
    Accumulators acc;
    std::vector<QBranch> branches = branch_quantum(c, tail, max_branches, acc);

    std::vector<int> tail_qubits;
    for (std::size_t i = tail; i < ins.size(); ++i) {
        if (const auto *m = std::get_if<Measure>(&ins[i])) {
            if (std::find(tail_qubits.begin(), tail_qubits.end(), m->qubit) == tail_qubits.end()) {
                tail_qubits.push_back(m->qubit);
            }
        }
    }

    ExactDistribution out;
    out.probabilities.assign(std::size_t{1} << c.result_bits().size(), 0.0);
    double accepted = 0.0;
    for (QBranch &b : branches) {
        std::vector<double> pattern(std::size_t{1} << tail_qubits.size(), 0.0);
        auto amps = b.state.amplitudes();
        for (std::size_t s = 0; s < amps.size(); ++s) {
            std::size_t key = 0;
            for (std::size_t k = 0; k < tail_qubits.size(); ++k) {
                key |= ((s >> tail_qubits[k]) & 1U) << k;
            }
            pattern[key] += std::norm(amps[s]);
        }
        for (std::size_t key = 0; key < pattern.size(); ++key) {
            double p = b.probability * pattern[key];
            if (p < kDropProbability * b.probability) {
                continue;
            }
            std::vector<std::uint8_t> bits = b.bits;
            bool discarded = false;
            for (std::size_t i = tail; i < ins.size() && !discarded; ++i) {
                std::visit(Overloaded{
                               [&](const Measure &m) {
                                   auto k = static_cast<std::size_t>(
                                       std::find(tail_qubits.begin(), tail_qubits.end(), m.qubit) -
                                       tail_qubits.begin());
                                   bits[static_cast<std::size_t>(m.bit)] = (key >> k) & 1U;
                               },
                               [&](const DiscardIf &d) {
                                   if (static_cast<bool>(bits[static_cast<std::size_t>(d.bit)]) == d.value) {
                                       acc.discard[d.checkpoint] += p;
                                       discarded = true;
                                   }
                               },
                               [&](const Decode &d) { apply_decode(d, bits, p, acc); },
                               [&](const auto &) {},
                           },
                           ins[i]);
            }
            if (discarded) {
                continue;
            }
            std::size_t r = 0;
            for (std::size_t k = 0; k < c.result_bits().size(); ++k) {
                r |= static_cast<std::size_t>(bits[static_cast<std::size_t>(c.result_bits()[k])]) << k;
            }
            out.probabilities[r] += p;
            accepted += p;
        }
    }
    if (!(accepted > 0.0)) {
        throw InputError("every branch of the circuit is discarded");
    }
    for (double &p : out.probabilities) {
        p /= accepted;
    }
    out.accepted_probability = accepted;
    out.discard_probability = std::move(acc.discard);
    out.correction_probability = std::move(acc.correction);
    out.peak_branches = acc.peak;
    return out;
}

std::vector<Branch> enumerate_branches(const Circuit &c, std::size_t max_branches) {
    c.validate();
    Accumulators acc;
    std::vector<QBranch> qb = branch_quantum(c, c.instructions().size(), max_branches, acc);
    std::vector<Branch> out;
    out.reserve(qb.size());
    for (QBranch &b : qb) {
        out.push_back({b.probability, std::move(b.bits), std::move(b.state)});
    }
    return out;
}

}  // namespace qavg::sim
