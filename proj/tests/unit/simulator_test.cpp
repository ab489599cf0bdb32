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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qavg/error.hpp"

using namespace qavg;
using namespace qavg::sim;

namespace {

Circuit single(GateKind k) {
    Circuit c(1, 1);
    c.append(Gate::one(k, 0));
    c.append(Measure{0, 0});
    c.set_result_bits({0});
    return c;
}

Circuit bell() {
    Circuit c(2, 2);
    c.append(Gate::one(GateKind::H, 0));
    c.append(Gate::two(GateKind::CNOT, 0, 1));
    c.append(Measure{0, 0});
    c.append(Measure{1, 1});
    c.set_result_bits({0, 1});
    return c;
}

}  // namespace

TEST(StateVector, GateMatrices) {
    StateVector s(1);
    s.apply(Gate::one(GateKind::Ry, 0, std::numbers::pi / 3));
    EXPECT_NEAR(s.probability_one(0), std::pow(std::sin(std::numbers::pi / 6), 2), 1e-15);
    s.apply(Gate::one(GateKind::Ry, 0, -std::numbers::pi / 3));
    EXPECT_NEAR(s.probability_one(0), 0.0, 1e-15);

    StateVector p(1);
    p.apply(Gate::one(GateKind::H, 0));
    p.apply(Gate::one(GateKind::Phase, 0, 0.7));
    Amplitude a1 = p.amplitudes()[1];
    EXPECT_NEAR(std::arg(a1), 0.7, 1e-14);
    p.apply(Gate::one(GateKind::Rz, 0, 0.4));
    EXPECT_NEAR(std::arg(p.amplitudes()[1] / p.amplitudes()[0]), 1.1, 1e-14);

    StateVector y(1);
    y.apply(Gate::one(GateKind::Y, 0));
    EXPECT_NEAR(std::abs(y.amplitudes()[1] - Amplitude(0, 1)), 0.0, 1e-15);
    y.apply(Gate::one(GateKind::S, 0));
    y.apply(Gate::one(GateKind::Sdg, 0));
    EXPECT_NEAR(std::abs(y.amplitudes()[1] - Amplitude(0, 1)), 0.0, 1e-15);
}

TEST(StateVector, TwoQubitGates) {
    // |+>|+> then CPhase(pi) is CZ: <X0 Z1> = 1.
    StateVector s(2);
    s.apply(Gate::one(GateKind::H, 0));
    s.apply(Gate::one(GateKind::H, 1));
    s.apply(Gate::two(GateKind::CPhase, 0, 1, std::numbers::pi));
    EXPECT_NEAR(s.expectation(PauliString::from_string("XZ")), 1.0, 1e-14);
    EXPECT_NEAR(s.expectation(PauliString::from_string("ZX")), 1.0, 1e-14);

    // Rzz(theta) on |++> equals CNOT Rz CNOT.
    StateVector a(3), b(3);
    for (int q = 0; q < 3; ++q) {
        a.apply(Gate::one(GateKind::H, q));
        a.apply(Gate::one(GateKind::Ry, q, 0.3 * (q + 1)));
        b.apply(Gate::one(GateKind::H, q));
        b.apply(Gate::one(GateKind::Ry, q, 0.3 * (q + 1)));
    }
    a.apply(Gate::two(GateKind::Rzz, 2, 0, 0.9));
    b.apply(Gate::two(GateKind::CNOT, 2, 0));
    b.apply(Gate::one(GateKind::Rz, 0, 0.9));
    b.apply(Gate::two(GateKind::CNOT, 2, 0));
    EXPECT_NEAR(std::abs(a.overlap(b)), 1.0, 1e-14);
    EXPECT_NEAR(std::arg(a.overlap(b)), 0.0, 1e-14);
}

TEST(StateVector, PauliExpectation) {
    StateVector s(3);
    s.apply(Gate::one(GateKind::X, 1));
    EXPECT_NEAR(s.expectation(PauliString::from_string("IZI")), -1.0, 1e-15);
    EXPECT_NEAR(s.expectation(PauliString::from_string("ZZZ")), -1.0, 1e-15);
    EXPECT_NEAR(s.expectation(PauliString::from_string("XII")), 0.0, 1e-15);
    StateVector y(1);
    y.apply(Gate::one(GateKind::H, 0));
    y.apply(Gate::one(GateKind::S, 0));
    EXPECT_NEAR(y.expectation(PauliString::from_string("Y")), 1.0, 1e-14);
    EXPECT_THROW(y.expectation(PauliString::from_string("IZ")), InputError);
}

TEST(PauliString, Commutation) {
    auto a = PauliString::from_string("XXI");
    auto b = PauliString::from_string("ZZI");
    auto c = PauliString::from_string("ZII");
    EXPECT_TRUE(a.commutes_with(b));
    EXPECT_FALSE(a.commutes_with(c));
    EXPECT_THROW(PauliString::from_string("XQ"), InputError);
}

TEST(RunShot, HadamardIsFair) {
    auto c = single(GateKind::H);
    int ones = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        ones += static_cast<int>(run_shot(c, {}, substream_seed(5, 0, static_cast<std::uint64_t>(i))).result(c));
    }
    EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 0.01);
}

TEST(RunShot, XIsDeterministic) {
    auto c = single(GateKind::X);
    for (std::uint64_t i = 0; i < 100; ++i) {
        EXPECT_EQ(run_shot(c, {}, i).result(c), 1u);
    }
}

TEST(RunShot, SameSeedSameOutcome) {
    auto c = bell();
    NoiseModel noise{0.01, 0.05, 0.02};
    for (std::uint64_t i = 0; i < 50; ++i) {
        EXPECT_EQ(run_shot(c, noise, i), run_shot(c, noise, i));
    }
}

TEST(RunShot, ReadoutNoiseRate) {
    auto c = single(GateKind::Z);
    NoiseModel noise{0.0, 0.0, 0.1};
    int flips = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        flips += static_cast<int>(run_shot(c, noise, substream_seed(9, 1, static_cast<std::uint64_t>(i))).result(c));
    }
    double rate = static_cast<double>(flips) / n;
    EXPECT_NEAR(rate, 0.1, 5 * std::sqrt(0.1 * 0.9 / n));
}

TEST(RunShot, SingleQubitDepolarizingRate) {
    // X, Y flip a Z eigenstate, Z does not: flip rate 2 p1 / 3.
    auto c = single(GateKind::Z);
    NoiseModel noise{0.3, 0.0, 0.0};
    int flips = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        flips += static_cast<int>(run_shot(c, noise, substream_seed(3, 0, static_cast<std::uint64_t>(i))).result(c));
    }
    double rate = static_cast<double>(flips) / n;
    EXPECT_NEAR(rate, 0.2, 5 * std::sqrt(0.2 * 0.8 / n));
}

TEST(RunShot, EmpiricalMatchesExactChiSquared) {
    Circuit c(3, 3);
    c.append(Gate::one(GateKind::Ry, 0, 1.1));
    c.append(Gate::one(GateKind::Ry, 1, 2.0));
    c.append(Gate::two(GateKind::CNOT, 0, 2));
    c.append(Gate::two(GateKind::CPhase, 1, 2, 0.8));
    c.append(Gate::one(GateKind::H, 2));
    c.append(Measure{0, 0});
    c.append(Conditioned{Gate::one(GateKind::Ry, 1, 0.7), 0, true});
    c.append(Measure{1, 1});
    c.append(Measure{2, 2});
    c.set_result_bits({0, 1, 2});
    auto exact = exact_distribution(c);
    const int n = 40000;
    std::vector<int> counts(8, 0);
    for (int i = 0; i < n; ++i) {
        ++counts[run_shot(c, {}, substream_seed(11, 0, static_cast<std::uint64_t>(i))).result(c)];
    }
    double chi2 = 0.0;
    int dof = -1;
    for (int j = 0; j < 8; ++j) {
        double e = exact.probabilities[j] * n;
        if (e > 5) {
            chi2 += (counts[j] - e) * (counts[j] - e) / e;
            ++dof;
        }
    }
    // Far tail of chi-squared with at most 7 degrees of freedom.
    EXPECT_LT(chi2, 30.0) << "dof " << dof;
}

TEST(ExactDistribution, Bell) {
    auto d = exact_distribution(bell());
    ASSERT_EQ(d.probabilities.size(), 4u);
    EXPECT_NEAR(d.probabilities[0], 0.5, 1e-15);
    EXPECT_NEAR(d.probabilities[3], 0.5, 1e-15);
    EXPECT_NEAR(d.probabilities[1], 0.0, 1e-15);
    EXPECT_NEAR(d.probabilities[2], 0.0, 1e-15);
}

TEST(ExactDistribution, MidCircuitBranchingSumsToOne) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> angle(0.0, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c(3, 4);
        for (int q = 0; q < 3; ++q) {
            c.append(Gate::one(GateKind::Ry, q, angle(rng)));
        }
        c.append(Gate::two(GateKind::CNOT, 0, 1));
        c.append(Measure{1, 0});
        c.append(Reset{1});
        c.append(Conditioned{Gate::one(GateKind::Ry, 2, angle(rng)), 0, true});
        c.append(Gate::two(GateKind::CPhase, 2, 0, angle(rng)));
        c.append(Gate::one(GateKind::H, 0));
        c.append(Measure{0, 1});
        c.append(Measure{2, 2});
        c.append(Measure{1, 3});
        c.set_result_bits({0, 1, 2, 3});
        auto d = exact_distribution(c);
        double s = 0.0;
        for (double p : d.probabilities) {
            s += p;
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
        // Reset qubit always reads zero.
        for (std::size_t j = 8; j < 16; ++j) {
            EXPECT_NEAR(d.probabilities[j], 0.0, 1e-15);
        }
    }
}

TEST(ExactDistribution, DiscardProbability) {
    Circuit c(2, 2);
    c.append(Gate::one(GateKind::Ry, 0, 2 * std::asin(std::sqrt(0.3))));
    c.append(Measure{0, 0});
    c.append(DiscardIf{0, true, "CP0"});
    c.append(Gate::one(GateKind::H, 1));
    c.append(Measure{1, 1});
    c.set_result_bits({1});
    auto d = exact_distribution(c);
    EXPECT_NEAR(d.accepted_probability, 0.7, 1e-14);
    EXPECT_NEAR(d.discard_probability.at("CP0"), 0.3, 1e-14);
    EXPECT_NEAR(d.probabilities[0], 0.5, 1e-14);
    EXPECT_NEAR(d.probabilities[1], 0.5, 1e-14);
}

TEST(ExactDistribution, BranchGuard) {
    Circuit c(1, 12);
    std::vector<int> live;
    for (int i = 0; i < 12; ++i) {
        live.push_back(i);
        c.append(Gate::one(GateKind::H, 0));
        c.append(Measure{0, i});
        c.append(Conditioned{Gate::one(GateKind::Ry, 0, 0.1 * (i + 1)), i, true});
    }
    c.append(Gate::one(GateKind::H, 0));
    c.set_result_bits(live);
    EXPECT_THROW(exact_distribution(c, 64), InputError);
    EXPECT_NO_THROW(exact_distribution(c));
}

TEST(Circuit, Validation) {
    EXPECT_THROW(Circuit(0, 0), InputError);
    EXPECT_THROW(Circuit(kMaxQubits + 1, 0), InputError);
    auto invalid = [](Instruction ins) {
        Circuit c(2, 1);
        c.append(std::move(ins));
        return c;
    };
    EXPECT_THROW(invalid(Gate::one(GateKind::H, 2)).validate(), InputError);
    EXPECT_THROW(invalid(Gate::two(GateKind::CNOT, 1, 1)).validate(), InputError);
    EXPECT_THROW(invalid(Gate::one(GateKind::Ry, 0, std::nan(""))).validate(), InputError);
    EXPECT_THROW(invalid(Measure{0, 1}).validate(), InputError);
    EXPECT_THROW(invalid(Conditioned{Gate::one(GateKind::X, 0), 3, true}).validate(), InputError);
    EXPECT_NO_THROW(invalid(Measure{1, 0}).validate());
}

TEST(NoiseModel, Validation) {
    EXPECT_THROW((NoiseModel{-0.1, 0.0, 0.0}).validate(), InputError);
    EXPECT_THROW((NoiseModel{0.0, 1.5, 0.0}).validate(), InputError);
    EXPECT_NO_THROW(NoiseModel::surrogate_default().validate());
    EXPECT_TRUE(NoiseModel{}.noiseless());
}

TEST(Substream, DistinctAndStable) {
    EXPECT_EQ(substream_seed(1, 2, 3), substream_seed(1, 2, 3));
    EXPECT_NE(substream_seed(1, 2, 3), substream_seed(1, 2, 4));
    EXPECT_NE(substream_seed(1, 2, 3), substream_seed(1, 3, 3));
    EXPECT_NE(substream_seed(1, 2, 3), substream_seed(2, 2, 3));
}
