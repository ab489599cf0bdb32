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

#include "qavg/steane.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "qavg/error.hpp"

namespace qavg::steane {

using sim::Gate;
using sim::GateKind;

namespace {

constexpr int kNumCheckpoints = 7;

std::uint64_t block_mask(std::uint8_t support, int offset) {
    return static_cast<std::uint64_t>(support) << offset;
}

std::uint8_t logical_mask() {
    std::uint8_t m = 0;
    for (int q : kLogicalSupport) {
        m |= static_cast<std::uint8_t>(1U << q);
    }
    return m;
}

// Hadamards on the pivots, then the fan-out network. Block-relative qubits.
constexpr std::array<int, 3> kPivots = {0, 4, 6};
constexpr std::array<std::array<int, 2>, 8> kEncoderCnots = {{
    {0, 1},
    {0, 2},
    {0, 3},
    {4, 0},
    {0, 5},
    {6, 2},
    {2, 5},
    {5, 3},
}};
// The flag reads Z4 Z5 Z6, which equals Z_L times a stabilizer.
constexpr std::array<int, 3> kFlagTaps = {4, 5, 6};

void transversal(std::vector<Gate> &out, GateKind kind, int offset) {
    for (int i = 0; i < kBlockSize; ++i) {
        out.push_back(Gate::one(kind, offset + i));
    }
}

std::vector<int> logical_qubits(int offset) {
    std::vector<int> qs;
    for (int q : kLogicalSupport) {
        qs.push_back(offset + q);
    }
    return qs;
}

int block_offset(const std::vector<int> &offsets, int logical) {
    if (logical < 0 || logical >= static_cast<int>(offsets.size())) {
        throw InputError("logical qubit " + std::to_string(logical) + " has no code block");
    }
    return offsets[static_cast<std::size_t>(logical)];
}

}  // namespace

StabilizerSet StabilizerSet::for_block(int offset) {
    StabilizerSet s;
    for (std::size_t k = 0; k < kGeneratorSupports.size(); ++k) {
        s.x[k] = {block_mask(kGeneratorSupports[k], offset), 0};
        s.z[k] = {0, block_mask(kGeneratorSupports[k], offset)};
    }
    return s;
}

std::array<sim::PauliString, 6> StabilizerSet::all() const {
    return {x[0], x[1], x[2], z[0], z[1], z[2]};
}

bool StabilizerSet::commuting() const {
    auto gens = all();
    for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
            if (!gens[a].commutes_with(gens[b])) {
                return false;
            }
        }
    }
    return true;
}

sim::PauliString logical_z(int offset) {
    return {0, block_mask(logical_mask(), offset)};
}

sim::PauliString logical_x(int offset) {
    return {block_mask(logical_mask(), offset), 0};
}

BfcTable::BfcTable() {
    // Codewords of |0>_L: the X-stabilizer group applied to 0000000.
    std::vector<std::uint8_t> zero_class;
    for (unsigned sel = 0; sel < 8; ++sel) {
        std::uint8_t w = 0;
        for (std::size_t k = 0; k < kGeneratorSupports.size(); ++k) {
            if (sel & (1U << k)) {
                w ^= kGeneratorSupports[k];
            }
        }
        zero_class.push_back(w);
    }
    std::sort(zero_class.begin(), zero_class.end());
    std::vector<std::uint8_t> one_class;
    for (std::uint8_t w : zero_class) {
        one_class.push_back(static_cast<std::uint8_t>(w ^ logical_mask()));
    }
    std::sort(one_class.begin(), one_class.end());
    codewords_ = {zero_class, one_class};

    std::array<bool, 128> filled{};
    for (int cls = 0; cls < 2; ++cls) {
        for (std::uint8_t w : codewords_[static_cast<std::size_t>(cls)]) {
            for (int flip = -1; flip < kBlockSize; ++flip) {
                auto s = static_cast<std::uint8_t>(flip < 0 ? w : w ^ (1U << flip));
                if (filled[s]) {
                    throw InternalError("Hamming balls of the Steane codewords overlap");
                }
                filled[s] = true;
                table_[s] = {w, cls == 1, flip};
            }
        }
    }
    if (!std::all_of(filled.begin(), filled.end(), [](bool f) { return f; })) {
        throw InternalError("Steane decoding table is not total");
    }
}

std::shared_ptr<const BfcTable> BfcTable::shared() {
    static const std::shared_ptr<const BfcTable> table = std::make_shared<const BfcTable>();
    return table;
}

const BfcTable::Entry &BfcTable::entry(std::uint8_t bits) const {
    if (bits >= 128) {
        throw InputError("readout string wider than 7 bits");
    }
    return table_[bits];
}

sim::DecodeResult BfcTable::decode(std::uint64_t raw) const {
    const Entry &e = entry(static_cast<std::uint8_t>(raw & 0x7F));
    return {e.logical, e.flipped};
}

DecodeOutcome bfc_decode(std::uint8_t bits) {
    const auto &e = BfcTable::shared()->entry(bits);
    DecodeOutcome out;
    out.logical = e.logical;
    if (e.flipped >= 0) {
        out.corrected_bit = e.flipped;
    }
    return out;
}

std::vector<sim::Instruction> build_encoder(int block_offset, int flag_qubit, int flag_bit,
                                            const std::string &checkpoint) {
    std::vector<sim::Instruction> out;
    for (int p : kPivots) {
        out.emplace_back(Gate::one(GateKind::H, block_offset + p));
    }
    for (const auto &[c, t] : kEncoderCnots) {
        out.emplace_back(Gate::two(GateKind::CNOT, block_offset + c, block_offset + t));
    }
    for (int q : kFlagTaps) {
        out.emplace_back(Gate::two(GateKind::CNOT, block_offset + q, flag_qubit));
    }
    out.emplace_back(sim::Measure{flag_qubit, flag_bit});
    out.emplace_back(sim::Reset{flag_qubit});
    out.emplace_back(sim::DiscardIf{flag_bit, true, checkpoint});
    return out;
}

std::vector<Gate> z_string_rotation(const std::vector<int> &qubits, double theta) {
    std::vector<Gate> out;
    const std::size_t w = qubits.size();
    if (w == 0) {
        throw InputError("empty Z string");
    }
    if (w == 1) {
        out.push_back(Gate::one(GateKind::Rz, qubits[0], theta));
        return out;
    }
    for (std::size_t k = 0; k + 2 < w; ++k) {
        out.push_back(Gate::two(GateKind::CNOT, qubits[k], qubits[k + 1]));
    }
    out.push_back(Gate::two(GateKind::Rzz, qubits[w - 2], qubits[w - 1], theta));
    for (std::size_t k = w - 2; k-- > 0;) {
        out.push_back(Gate::two(GateKind::CNOT, qubits[k], qubits[k + 1]));
    }
    return out;
}

std::vector<Gate> expand_logical(const Gate &g, const std::vector<int> &block_offsets) {
    std::vector<Gate> out;
    const int a = block_offset(block_offsets, g.qubits[0]);
    auto rz = [&](int offset, double theta) {
        auto gates = z_string_rotation(logical_qubits(offset), theta);
        out.insert(out.end(), gates.begin(), gates.end());
    };
    switch (g.kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
            transversal(out, g.kind, a);
            return out;
        case GateKind::S:
            transversal(out, GateKind::Sdg, a);
            return out;
        case GateKind::Sdg:
            transversal(out, GateKind::S, a);
            return out;
        case GateKind::Rz:
        case GateKind::Phase:
            // Phase(theta) equals Rz(theta) up to a global phase.
            rz(a, g.angle);
            return out;
        case GateKind::Ry:
            // Ry = S_L H_L Rz_L H_L S_L^dag, with S_L^dag = S on every qubit.
            transversal(out, GateKind::S, a);
            transversal(out, GateKind::H, a);
            rz(a, g.angle);
            transversal(out, GateKind::H, a);
            transversal(out, GateKind::Sdg, a);
            return out;
        case GateKind::CNOT: {
            const int b = block_offset(block_offsets, g.qubits[1]);
            for (int i = 0; i < kBlockSize; ++i) {
                out.push_back(Gate::two(GateKind::CNOT, a + i, b + i));
            }
            return out;
        }
        case GateKind::Rzz:
        case GateKind::CPhase: {
            const int b = block_offset(block_offsets, g.qubits[1]);
            if (a == b) {
                throw InputError("two-qubit logical gate on a single block");
            }
            std::vector<int> both = logical_qubits(a);
            auto tq = logical_qubits(b);
            both.insert(both.end(), tq.begin(), tq.end());
            if (g.kind == GateKind::Rzz) {
                auto gates = z_string_rotation(both, g.angle);
                out.insert(out.end(), gates.begin(), gates.end());
                return out;
            }
            // diag(1,1,1,e^{i t}) ~ Rz(t/2) x Rz(t/2) . exp(+i t/4 Z Z)
            rz(a, g.angle / 2);
            rz(b, g.angle / 2);
            auto gates = z_string_rotation(both, -g.angle / 2);
            out.insert(out.end(), gates.begin(), gates.end());
            return out;
        }
        case GateKind::Y:
            break;
    }
    throw InputError(std::string("no logical expansion for gate ") + sim::to_string(g.kind));
}

std::string checkpoint_label(int k) {
    if (k < 0 || k >= kNumCheckpoints) {
        throw InputError("checkpoint index out of range");
    }
    return "CP" + std::to_string(k);
}

LogicalCircuit build_log1a(const model::QubitHamiltonian &h, const circuits::QpeSettings &s, double prep_angle) {
    s.validate();
    if (s.n_qft != 3) {
        throw InputError("the logical circuit has checkpoints for exactly three readout rounds");
    }
    constexpr int kSys = 0;
    constexpr int kAnc = kBlockSize;
    constexpr int kFlag = 2 * kBlockSize;
    const std::vector<int> offsets = {kSys, kAnc};  // logical 0 = system, 1 = ancilla
    const int n = s.n_qft;

    LogicalCircuit out;
    sim::Circuit &c = out.circuit;
    c = sim::Circuit(2 * kBlockSize + 1, n);
    auto append_gates = [&](const std::vector<Gate> &gates) {
        for (const Gate &g : gates) {
            c.append(g);
        }
    };
    auto logical = [&](const Gate &g) { append_gates(expand_logical(g, offsets)); };
    auto encode = [&](int block, const std::string &cp) {
        int flag_bit = c.add_bits(1);
        auto block_ins = build_encoder(block, kFlag, flag_bit, cp);
        c.append(block_ins);
    };
    auto readout = [&](int block, int output, const std::string &cp, const char *what) {
        c.append(sim::Checkpoint{cp});
        int first = c.add_bits(kBlockSize);
        std::vector<int> raw;
        std::size_t site = c.instructions().size();
        for (int i = 0; i < kBlockSize; ++i) {
            out.injection_sites.push_back(
                {site, block + i, std::string("X before ") + what + " readout of qubit " + std::to_string(i)});
        }
        for (int i = 0; i < kBlockSize; ++i) {
            c.append(sim::Measure{block + i, first + i});
            raw.push_back(first + i);
        }
        c.append(sim::Decode{raw, output, cp, BfcTable::shared()});
    };

    c.append(sim::Checkpoint{checkpoint_label(0)});
    encode(kSys, checkpoint_label(0));
    encode(kAnc, checkpoint_label(0));
    logical(Gate::one(GateKind::Ry, 0, 2 * prep_angle));

    for (int m = 0; m < n; ++m) {
        if (m > 0) {
            for (int i = 0; i < kBlockSize; ++i) {
                c.append(sim::Reset{kAnc + i});
            }
            c.append(sim::Checkpoint{checkpoint_label(2 * m)});
            encode(kAnc, checkpoint_label(2 * m));
        }
        logical(Gate::one(GateKind::H, 1));
        for (const Gate &g : circuits::controlled_rte(h, s, 1 << (n - 1 - m), 1, 0)) {
            logical(g);
        }
        for (int l = 0; l < m; ++l) {
            for (const Gate &g : expand_logical(Gate::one(GateKind::Phase, 1, circuits::qft_correction_angle(m, l)),
                                                offsets)) {
                c.append(sim::Conditioned{g, l, true});
            }
        }
        std::size_t site = c.instructions().size();
        for (int i = 0; i < kBlockSize; ++i) {
            out.injection_sites.push_back(
                {site, kAnc + i, "X before closing H_L of round " + std::to_string(m) + " on qubit " + std::to_string(i)});
        }
        logical(Gate::one(GateKind::H, 1));
        readout(kAnc, m, checkpoint_label(2 * m + 1), ("ancilla round " + std::to_string(m)).c_str());
    }
    out.system_bit = c.add_bits(1);
    readout(kSys, out.system_bit, checkpoint_label(6), "system");

    std::vector<int> result;
    for (int m = 0; m < n; ++m) {
        result.push_back(m);
    }
    c.set_result_bits(std::move(result));
    return out;
}

SurvivalRecord survival_report(const std::vector<sim::CircuitOutcome> &outcomes) {
    SurvivalRecord rec;
    rec.shots = outcomes.size();
    std::map<std::string, int> index;
    for (int k = 0; k < kNumCheckpoints; ++k) {
        CheckpointRow row;
        row.label = checkpoint_label(k);
        row.discard_checkpoint = k == 0 || k == 2 || k == 4;
        index[row.label] = k;
        rec.rows.push_back(row);
    }
    auto lookup = [&](const std::string &label) {
        auto it = index.find(label);
        if (it == index.end()) {
            throw InputError("outcome refers to unknown checkpoint '" + label + "'");
        }
        return static_cast<std::size_t>(it->second);
    };
    for (const auto &o : outcomes) {
        if (o.discarded) {
            std::size_t k = lookup(o.discard_checkpoint);
            if (!rec.rows[k].discard_checkpoint) {
                throw InputError("discard recorded at correction checkpoint " + o.discard_checkpoint);
            }
            rec.rows[k].local_discards++;
        }
        std::vector<bool> seen(kNumCheckpoints, false);
        for (const auto &ev : o.corrections) {
            std::size_t k = lookup(ev.checkpoint);
            if (rec.rows[k].discard_checkpoint) {
                throw InputError("correction recorded at discard checkpoint " + ev.checkpoint);
            }
            if (!seen[k]) {
                seen[k] = true;
                rec.rows[k].corrections++;
            }
        }
    }
    std::uint64_t alive = rec.shots;
    std::uint64_t accumulated = 0;
    auto ratio = [](std::uint64_t a, std::uint64_t b) { return b == 0 ? 0.0 : static_cast<double>(a) / b; };
    for (auto &row : rec.rows) {
        row.reached = alive;
        accumulated += row.local_discards;
        row.accumulated_discards = accumulated;
        row.survivors = alive - row.local_discards;
        row.local_ratio = ratio(row.local_discards, row.reached);
        row.accumulated_ratio = ratio(row.accumulated_discards, rec.shots);
        row.correction_ratio = ratio(row.corrections, row.reached);
        alive = row.survivors;
    }
    return rec;
}

}  // namespace qavg::steane
