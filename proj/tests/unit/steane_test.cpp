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

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "qavg/error.hpp"
#include "qavg/fci.hpp"

using namespace qavg;
using sim::Gate;
using sim::GateKind;
using Amp = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Accepted (flag = 0) state after encoding `blocks` blocks of seven qubits,
// flag on the last qubit.
sim::StateVector encoded_zero(int blocks) {
    const int flag = 7 * blocks;
    sim::Circuit c(flag + 1, blocks);
    for (int b = 0; b < blocks; ++b) {
        auto enc = steane::build_encoder(7 * b, flag, b, "CP0");
        c.append(enc);
    }
    auto branches = sim::enumerate_branches(c);
    EXPECT_EQ(branches.size(), 1u);
    EXPECT_NEAR(branches.at(0).probability, 1.0, 1e-12);
    return branches.at(0).state;
}

// Logical basis states |b> for `blocks` logical qubits; bit q of b is
// logical qubit q.
std::vector<sim::StateVector> logical_basis(int blocks) {
    auto zero = encoded_zero(blocks);
    std::vector<sim::StateVector> out;
    for (int b = 0; b < (1 << blocks); ++b) {
        auto s = zero;
        for (int q = 0; q < blocks; ++q) {
            if ((b >> q) & 1) {
                for (int i : steane::kLogicalSupport) {
                    s.apply(Gate::one(GateKind::X, 7 * q + i));
                }
            }
        }
        out.push_back(s);
    }
    return out;
}

// Matrix <a_L| G_phys |b_L> over the logical basis.
std::vector<Amp> logical_matrix(const std::vector<Gate> &gates, int blocks) {
    auto basis = logical_basis(blocks);
    const std::size_t dim = basis.size();
    std::vector<Amp> m(dim * dim);
    for (std::size_t b = 0; b < dim; ++b) {
        auto s = basis[b];
        for (const Gate &g : gates) {
            s.apply(g);
        }
        for (std::size_t a = 0; a < dim; ++a) {
            m[a * dim + b] = basis[a].overlap(s);
        }
    }
    return m;
}

// Max entry distance after removing a global phase.
double phase_free_distance(const std::vector<Amp> &got, const std::vector<Amp> &want) {
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (std::abs(want[i]) > std::abs(want[pivot])) {
            pivot = i;
        }
    }
    Amp phase = got[pivot] / want[pivot];
    phase /= std::abs(phase);
    double d = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        d = std::max(d, std::abs(got[i] - phase * want[i]));
    }
    return d;
}

std::vector<Amp> ideal_one(const Gate &g) {
    const Amp I{0, 1};
    const double c = std::cos(g.angle / 2);
    const double s = std::sin(g.angle / 2);
    const double r = 1 / std::sqrt(2.0);
    switch (g.kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::S:
            return {1, 0, 0, I};
        case GateKind::Sdg:
            return {1, 0, 0, -I};
        case GateKind::Rz:
            return {std::polar(1.0, -g.angle / 2), 0, 0, std::polar(1.0, g.angle / 2)};
        case GateKind::Phase:
            return {1, 0, 0, std::polar(1.0, g.angle)};
        case GateKind::Ry:
            return {c, -s, s, c};
        default:
            return {};
    }
}

}  // namespace

TEST(Steane, StabilizersCommuteAndLogicalsAnticommute) {
    for (int offset : {0, 7}) {
        auto st = steane::StabilizerSet::for_block(offset);
        EXPECT_TRUE(st.commuting());
        auto zl = steane::logical_z(offset);
        auto xl = steane::logical_x(offset);
        EXPECT_FALSE(zl.commutes_with(xl));
        for (const auto &g : st.all()) {
            EXPECT_TRUE(g.commutes_with(zl));
            EXPECT_TRUE(g.commutes_with(xl));
        }
    }
    // Generator supports are the [7,4] Hamming parity checks: distinct
    // nonzero syndromes for every single qubit.
    std::set<int> syndromes;
    for (int q = 0; q < 7; ++q) {
        int s = 0;
        for (int g = 0; g < 3; ++g) {
            s |= ((steane::kGeneratorSupports[g] >> q) & 1) << g;
        }
        EXPECT_NE(s, 0);
        syndromes.insert(s);
    }
    EXPECT_EQ(syndromes.size(), 7u);
}

TEST(Steane, EncoderPreparesLogicalZero) {
    const int flag = 7;
    sim::Circuit c(8, 1);
    auto enc = steane::build_encoder(0, flag, 0, "CP0");
    c.append(enc);
    auto d = sim::exact_distribution(c);
    EXPECT_NEAR(d.accepted_probability, 1.0, 1e-12);
    auto s = encoded_zero(1);
    for (const auto &g : steane::StabilizerSet::for_block(0).all()) {
        EXPECT_NEAR(s.expectation(g), 1.0, 1e-10);
    }
    EXPECT_NEAR(s.expectation(steane::logical_z(0)), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(s.expectation(steane::logical_x(0))), 0.0, 1e-10);
}

TEST(Steane, EncoderSingleXFaultsAreFlaggedOrCorrectable) {
    const int flag = 7;
    const auto enc = steane::build_encoder(0, flag, 0, "CP0");
    // The flag measurement is the first Measure in the block.
    std::size_t measure_at = 0;
    while (!std::holds_alternative<sim::Measure>(enc[measure_at])) {
        ++measure_at;
    }
    bool any_flagged = false;
    for (std::size_t at = 0; at <= measure_at; ++at) {
        for (int q = 0; q <= flag; ++q) {
            sim::Circuit c(8, 1);
            for (std::size_t i = 0; i < enc.size(); ++i) {
                if (i == at) {
                    c.append(Gate::one(GateKind::X, q));
                }
                c.append(enc[i]);
            }
            // Discarded branches are not returned.
            double accepted = 0.0;
            for (const auto &b : sim::enumerate_branches(c)) {
                accepted += b.probability;
                // Every Z readout of the accepted state decodes to logical 0.
                auto amps = b.state.amplitudes();
                for (std::size_t idx = 0; idx < amps.size(); ++idx) {
                    if (std::norm(amps[idx]) > 1e-12) {
                        auto bits = static_cast<std::uint8_t>(idx & 0x7F);
                        EXPECT_FALSE(steane::bfc_decode(bits).logical) << "fault before " << at << " on " << q;
                    }
                }
            }
            any_flagged = any_flagged || accepted < 1 - 1e-12;
        }
    }
    EXPECT_TRUE(any_flagged);
}

TEST(Steane, SingleQubitLogicalGatesOnCodeSpace) {
    const std::vector<Gate> gates = {
        Gate::one(GateKind::H, 0),         Gate::one(GateKind::X, 0),          Gate::one(GateKind::Z, 0),
        Gate::one(GateKind::S, 0),         Gate::one(GateKind::Sdg, 0),        Gate::one(GateKind::Rz, 0, 0.37),
        Gate::one(GateKind::Rz, 0, -2.1),  Gate::one(GateKind::Phase, 0, 1.3), Gate::one(GateKind::Ry, 0, 0.81),
        Gate::one(GateKind::Ry, 0, -2.9),
    };
    for (const Gate &g : gates) {
        auto m = logical_matrix(steane::expand_logical(g, {0}), 1);
        EXPECT_LT(phase_free_distance(m, ideal_one(g)), 1e-10) << sim::to_string(g.kind) << " " << g.angle;
    }
}

TEST(Steane, TwoQubitLogicalGatesOnCodeSpace) {
    const double t = 0.77;
    struct Case {
        Gate g;
        std::vector<Amp> want;  // basis index: bit q = logical q
    };
    const std::vector<Case> cases = {
        {Gate::two(GateKind::CNOT, 0, 1), {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0}},
        {Gate::two(GateKind::CPhase, 0, 1, t),
         {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, std::polar(1.0, t)}},
        {Gate::two(GateKind::Rzz, 0, 1, t),
         {std::polar(1.0, -t / 2), 0, 0, 0, 0, std::polar(1.0, t / 2), 0, 0, 0, 0, std::polar(1.0, t / 2), 0, 0, 0,
          0, std::polar(1.0, -t / 2)}},
    };
    for (const auto &c : cases) {
        auto m = logical_matrix(steane::expand_logical(c.g, {0, 7}), 2);
        EXPECT_LT(phase_free_distance(m, c.want), 1e-10) << sim::to_string(c.g.kind);
    }
}

TEST(Steane, TrivialAndFlipExpansions) {
    auto zero = encoded_zero(1);
    auto s = zero;
    for (const Gate &g : steane::expand_logical(Gate::one(GateKind::Rz, 0, 0.0), {0})) {
        s.apply(g);
    }
    EXPECT_NEAR(std::abs(s.overlap(zero)), 1.0, 1e-12);
    for (const Gate &g : steane::expand_logical(Gate::one(GateKind::X, 0), {0})) {
        s.apply(g);
    }
    EXPECT_NEAR(s.expectation(steane::logical_z(0)), -1.0, 1e-12);
    EXPECT_THROW(steane::expand_logical(Gate::one(GateKind::Y, 0), {0}), InputError);
    EXPECT_THROW(steane::expand_logical(Gate::two(GateKind::CPhase, 0, 0, 1.0), {0, 7}), InputError);
}

TEST(Steane, BfcExamples) {
    auto z = steane::bfc_decode(0b0000000);
    EXPECT_FALSE(z.logical);
    EXPECT_FALSE(z.corrected_bit.has_value());
    auto one = steane::bfc_decode(0b0000001);  // qubit 0 read as 1
    EXPECT_FALSE(one.logical);
    ASSERT_TRUE(one.corrected_bit.has_value());
    EXPECT_EQ(*one.corrected_bit, 0);
    auto all = steane::bfc_decode(0b1111111);
    EXPECT_TRUE(all.logical);
    EXPECT_FALSE(all.corrected_bit.has_value());
}

TEST(Steane, BfcTableIsPerfectTiling) {
    const auto &table = *steane::BfcTable::shared();
    ASSERT_EQ(table.codewords(false).size(), 8u);
    ASSERT_EQ(table.codewords(true).size(), 8u);
    // Independent oracle: brute-force nearest codeword over all 16.
    std::vector<std::pair<std::uint8_t, bool>> words;
    for (bool l : {false, true}) {
        for (auto w : table.codewords(l)) {
            EXPECT_EQ(std::popcount(static_cast<unsigned>(w)) % 2, l ? 1 : 0);
            words.emplace_back(w, l);
        }
    }
    for (int raw = 0; raw < 128; ++raw) {
        int best = 99;
        int ties = 0;
        std::pair<std::uint8_t, bool> arg{};
        for (const auto &w : words) {
            int d = std::popcount(static_cast<unsigned>(raw ^ w.first));
            if (d < best) {
                best = d;
                ties = 1;
                arg = w;
            } else if (d == best) {
                ++ties;
            }
        }
        EXPECT_LE(best, 1) << raw;
        EXPECT_EQ(ties, 1) << raw;
        const auto &e = table.entry(static_cast<std::uint8_t>(raw));
        EXPECT_EQ(e.logical, arg.second);
        EXPECT_EQ(e.corrected, arg.first);
        EXPECT_EQ(e.flipped, best == 0 ? -1 : std::countr_zero(static_cast<unsigned>(raw ^ arg.first)));
    }
    // Codewords satisfy the parity checks.
    for (const auto &w : words) {
        for (auto g : steane::kGeneratorSupports) {
            EXPECT_EQ(std::popcount(static_cast<unsigned>(w.first & g)) % 2, 0);
        }
    }
}

TEST(Steane, Log1aMatchesPhysicalAndHasNoEvents) {
    auto d = model::reference_dimer_params();
    auto gs = fci::ground_state(d);
    auto h = model::qubit_hamiltonian(d, model::Excitation::hole);
    auto s = circuits::QpeSettings{}.with_shift(2);
    double angle = fci::prep_angle(gs, model::Excitation::hole, model::Orbital::d);
    auto lc = steane::build_log1a(h, s, angle);
    auto logical = sim::exact_distribution(lc.circuit);
    auto phys = sim::exact_distribution(circuits::build_phys1a(h, s, angle));
    for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_NEAR(logical.probabilities[j], phys.probabilities[j], 1e-10);
    }
    EXPECT_NEAR(logical.accepted_probability, 1.0, 1e-10);
    for (const auto &[cp, p] : logical.discard_probability) {
        EXPECT_NEAR(p, 0.0, 1e-10) << cp;
    }
    for (const auto &[cp, p] : logical.correction_probability) {
        EXPECT_NEAR(p, 0.0, 1e-10) << cp;
    }
    EXPECT_EQ(lc.injection_sites.size(), 49u);
}

TEST(Steane, ReadoutFaultsAreCorrected) {
    auto d = model::reference_dimer_params();
    auto gs = fci::ground_state(d);
    auto h = model::qubit_hamiltonian(d, model::Excitation::electron);
    circuits::QpeSettings s;
    auto lc = steane::build_log1a(h, s, fci::prep_angle(gs, model::Excitation::electron, model::Orbital::p));
    auto base = sim::exact_distribution(lc.circuit);
    // A spread of sites; the full sweep lives in the acceptance run.
    for (std::size_t k = 0; k < lc.injection_sites.size(); k += 8) {
        const auto &site = lc.injection_sites[k];
        auto c = lc.circuit;
        c.insert(site.index, Gate::one(GateKind::X, site.qubit));
        auto got = sim::exact_distribution(c);
        for (std::size_t j = 0; j < 8; ++j) {
            EXPECT_NEAR(got.probabilities[j], base.probabilities[j], 1e-10) << site.description;
        }
    }
}

TEST(Steane, Log1aNeedsThreeRounds) {
    circuits::QpeSettings s;
    s.n_qft = 2;
    EXPECT_THROW(steane::build_log1a({}, s, 0.1), InputError);
}

TEST(Steane, SurvivalBookkeeping) {
    // Synthetic batch with known per-checkpoint event counts.
    std::vector<sim::CircuitOutcome> batch(8000);
    std::size_t next = 0;
    auto discard = [&](int n, const char *cp) {
        for (int i = 0; i < n; ++i, ++next) {
            batch[next].discarded = true;
            batch[next].discard_checkpoint = cp;
        }
    };
    discard(114, "CP0");
    discard(57, "CP2");
    discard(64, "CP4");
    auto correct = [&](int n, const char *cp, std::size_t start) {
        for (int i = 0; i < n; ++i) {
            auto &o = batch[start + static_cast<std::size_t>(i)];
            o.corrections.push_back({cp, i % 7});
            if (i % 5 == 0) {
                // A second flip at the same checkpoint counts once.
                o.corrections.push_back({cp, (i + 1) % 7});
            }
        }
    };
    correct(731, "CP1", next);
    correct(541, "CP3", next + 1000);
    correct(1024, "CP5", next + 2000);
    correct(1338, "CP6", next + 3500);
    auto r = steane::survival_report(batch);
    ASSERT_EQ(r.rows.size(), 7u);
    EXPECT_EQ(r.rows[0].local_discards, 114u);
    EXPECT_NEAR(r.rows[0].local_ratio, 0.0143, 5e-5);
    EXPECT_EQ(r.rows[0].survivors, 7886u);
    EXPECT_NEAR(r.rows[1].correction_ratio, 0.0927, 5e-5);
    EXPECT_NEAR(r.rows[2].local_ratio, 0.0072, 5e-5);
    EXPECT_EQ(r.rows[2].accumulated_discards, 171u);
    EXPECT_EQ(r.rows[2].survivors, 7829u);
    EXPECT_NEAR(r.rows[3].correction_ratio, 0.0691, 5e-5);
    EXPECT_NEAR(r.rows[4].local_ratio, 0.0082, 5e-5);
    EXPECT_EQ(r.rows[4].survivors, 7765u);
    EXPECT_NEAR(r.rows[5].correction_ratio, 0.1319, 5e-5);
    EXPECT_NEAR(r.rows[6].correction_ratio, 0.1723, 5e-5);
    EXPECT_EQ(r.rows[6].survivors, 7765u);
    EXPECT_EQ(r.rows[6].accumulated_discards, 235u);
}

TEST(Steane, SurvivalOfCleanBatch) {
    std::vector<sim::CircuitOutcome> batch(50);
    auto r = steane::survival_report(batch);
    for (const auto &row : r.rows) {
        EXPECT_EQ(row.local_discards, 0u);
        EXPECT_EQ(row.corrections, 0u);
        EXPECT_EQ(row.survivors, 50u);
    }
}

TEST(Steane, SurvivalRejectsMisplacedEvents) {
    std::vector<sim::CircuitOutcome> batch(1);
    batch[0].discarded = true;
    batch[0].discard_checkpoint = "CP1";
    EXPECT_THROW(steane::survival_report(batch), InputError);
    batch[0].discard_checkpoint = "CP9";
    EXPECT_THROW(steane::survival_report(batch), InputError);
    batch[0] = {};
    batch[0].corrections.push_back({"CP2", 0});
    EXPECT_THROW(steane::survival_report(batch), InputError);
}
