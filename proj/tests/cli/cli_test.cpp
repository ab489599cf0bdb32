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


#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qavg/error.hpp"
#include "qavg/fci.hpp"
#include "qavg/io.hpp"
#include "qavg_cli/commands.hpp"

#ifndef QAVG_TEST_DATA_DIR
#define QAVG_TEST_DATA_DIR "."
#endif

namespace qavg::cli {
namespace {

namespace fs = std::filesystem;

fs::path fixture_dir() { return fs::path(QAVG_TEST_DATA_DIR) / "phys1a_noiseless"; }

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Paths json_files(const fs::path &dir, const std::string &prefix) {
    Paths out;
    for (const auto &e : fs::directory_iterator(dir)) {
        if (e.path().filename().string().starts_with(prefix) && e.path().extension() == ".json") {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qavg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    RunConfig config(const std::string &sub = "") const {
        RunConfig c;
        c.out = dir_ / sub;
        return c;
    }

    fs::path dir_;
};

TEST(RunConfig, DefaultsRoundTrip) {
    RunConfig c;
    EXPECT_EQ(RunConfig::from_json(c.to_json()).to_json(), c.to_json());
    EXPECT_EQ(RunConfig::from_json(io::Json::object()).to_json(), c.to_json());
}

TEST(RunConfig, OverridesApplyInOrder) {
    io::Json file = {{"shots", 100}, {"seed", 9}};
    io::Json flags = {{"shots", 200}};
    auto c = RunConfig::from_json(merge_flat(merge_flat(RunConfig{}.to_json(), file), flags));
    EXPECT_EQ(c.shots, 200u);
    EXPECT_EQ(c.seed, 9u);
}

TEST(RunConfig, RejectsBadInput) {
    EXPECT_THROW(RunConfig::from_json({{"shot", 10}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"shots", -1}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"shots", 0}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"shots", "ten"}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"shifts", {0, 4}}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"variant", "phys2a"}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"rte", "trotter:0"}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"p1", 1.5}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"window", "left"}}), InputError);
    EXPECT_THROW(RunConfig::from_json({{"noise", {{"p1", 0.1}}}}), InputError);
    EXPECT_THROW(RunConfig::from_json(io::Json::array()), InputError);
}

TEST(RunConfig, WannierDimerDiffersFromReference) {
    RunConfig c;
    c.params = "wannier";
    auto w = c.dimer();
    EXPECT_NEAR(w.eps_p, 1.0215, 1e-12);
    EXPECT_NE(w.eps_p, RunConfig{}.dimer().eps_p);
}

TEST_F(CliTest, FciReport) {
    auto r = cmd_fci(config());
    ASSERT_EQ(r.written.size(), 1u);
    auto j = io::read_json(r.written[0]);
    EXPECT_NEAR(j["E_gs"].get<double>(), -1.76303, 1e-5);
    EXPECT_EQ(j["config"]["delta_mu"].get<double>(), 1.5);
}

TEST_F(CliTest, FciReportsForeignSector) {
    auto c = config();
    c.delta_mu = 0.0;
    auto j = io::read_json(cmd_fci(c).written[0]);
    EXPECT_FALSE(j["in_reference_sector"].get<bool>());
    EXPECT_TRUE(j["prep_angles"].is_null());
}

TEST_F(CliTest, SampleWritesSixteenNormalizedHistograms) {
    auto c = config();
    c.variant = circuits::Variant::phys3a;
    auto r = cmd_sample(c);
    ASSERT_EQ(r.written.size(), 16u);
    for (const auto &p : r.written) {
        auto h = io::histogram_from_json(io::read_json(p)).histogram;
        std::uint64_t sum = 0;
        for (auto n : h.counts) {
            sum += n;
        }
        EXPECT_EQ(sum, h.shots_accepted);
        EXPECT_EQ(h.shots_accepted, 500u);
    }
}

TEST_F(CliTest, SampleIsIdempotentAndThreadIndependent) {
    auto a = config("a");
    auto b = config("b");
    a.threads = 1;
    b.threads = 3;
    auto ra = cmd_sample(a);
    auto rb = cmd_sample(b);
    ASSERT_EQ(ra.written.size(), rb.written.size());
    for (std::size_t i = 0; i < ra.written.size(); ++i) {
        EXPECT_EQ(slurp(ra.written[i]), slurp(rb.written[i]));
    }
}

TEST_F(CliTest, HistogramFileRoundTripIsByteIdentical) {
    auto r = cmd_sample(config());
    for (const auto &p : r.written) {
        std::string first = slurp(p);
        std::string second = io::dump(io::histogram_to_json(io::histogram_from_json(io::Json::parse(first))));
        EXPECT_EQ(first, second);
    }
}

TEST_F(CliTest, BundledFixturesRegenerate) {
    auto c = config();
    c.seed = 1;
    auto r = cmd_sample(c);
    auto fixtures = json_files(fixture_dir(), "hist_");
    ASSERT_EQ(fixtures.size(), 16u);
    for (const auto &p : fixtures) {
        EXPECT_EQ(slurp(p), slurp(dir_ / p.filename())) << p.filename();
    }
}

TEST_F(CliTest, OptimizeBundledFixtures) {
    auto c = config();
    c.optimizer.restarts = 100;
    auto r = cmd_optimize(c, json_files(fixture_dir(), "hist_"));
    ASSERT_EQ(r.written.size(), 2u);
    auto d = c.dimer();
    auto gs = fci::ground_state(d);
    for (const auto &p : r.written) {
        auto j = io::read_json(p);
        auto fit = io::fit_from_json(j);
        auto t = fci::excitation_table(gs, d, fit.params.xi);
        EXPECT_NEAR(fit.params.eps0, t.energies[0], 0.02);
        EXPECT_NEAR(fit.params.eps1, t.energies[1], 0.02);
        double dt = std::abs(fit.params.theta - fci::oracle_angle(t));
        EXPECT_LT(std::min(dt, std::numbers::pi - dt), 0.05);
        EXPECT_GT(*fit.reference_l1, 0.0);
        EXPECT_EQ(j["config"]["restarts"].get<int>(), 100);
    }
}

TEST_F(CliTest, LogicalNoiselessKeepsEveryShot) {
    auto c = config();
    c.variant = circuits::Variant::log1a;
    c.shots = 4;
    c.shifts = {1};
    auto r = cmd_sample(c);
    ASSERT_EQ(r.written.size(), 6u);  // 4 histograms plus the survival table
    for (const auto &p : json_files(dir_, "hist_")) {
        auto h = io::histogram_from_json(io::read_json(p)).histogram;
        EXPECT_EQ(h.shots_accepted, h.shots_submitted);
    }
    auto s = io::read_json(dir_ / "survival.json");
    EXPECT_EQ(s["checkpoints"].back()["survivors"].get<int>(), 16);
}

TEST_F(CliTest, LogicalNoisyDiscardsAndCorrects) {
    auto c = config();
    c.variant = circuits::Variant::log1a;
    c.shots = 40;
    c.shifts = {0};
    c.noise = {1e-3, 2e-2, 2e-2};
    cmd_sample(c);
    std::uint64_t submitted = 0;
    std::uint64_t accepted = 0;
    for (const auto &p : json_files(dir_, "hist_")) {
        auto h = io::histogram_from_json(io::read_json(p)).histogram;
        submitted += h.shots_submitted;
        accepted += h.shots_accepted;
    }
    EXPECT_LT(accepted, submitted);
    auto s = io::read_json(dir_ / "survival.json");
    std::uint64_t events = 0;
    for (const auto &row : s["checkpoints"]) {
        events += row["local_discards"].get<std::uint64_t>() + row["corrections"].get<std::uint64_t>();
    }
    EXPECT_GT(events, 0u);
    std::string csv = slurp(dir_ / "survival.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
}

TEST_F(CliTest, DosOnExactParametersHasTotalWeightFour) {
    auto r = cmd_dos(config(), {});
    auto poles = io::read_json(dir_ / "dos_poles.json");
    double total = 0.0;
    for (const char *xi : {"e", "h"}) {
        for (const auto &p : poles[xi]) {
            total += p["weight"].get<double>();
        }
    }
    EXPECT_NEAR(total, 4.0, 1e-12);
    EXPECT_EQ(poles["source"], "exact");
    EXPECT_TRUE(slurp(dir_ / "dos.csv").starts_with("E,rho_e,rho_h,rho_total\n"));
}

TEST_F(CliTest, DosNeedsBothSectors) {
    auto c = config();
    c.optimizer.restarts = 5;
    auto fits = cmd_optimize(c, json_files(fixture_dir(), "hist_phys1a_e_"));
    EXPECT_THROW(cmd_dos(c, fits.written), InputError);
}

TEST_F(CliTest, DirectIntegralsPerShift) {
    cmd_direct(config(), json_files(fixture_dir(), "hist_"));
    auto j = io::read_json(dir_ / "direct.json");
    ASSERT_EQ(j["integrals"].size(), 8u);
    for (const auto &row : j["integrals"]) {
        EXPECT_NEAR(row["integral"].get<double>(), 2.0, 1e-9);
    }
    for (int s = 0; s < 4; ++s) {
        EXPECT_TRUE(fs::exists(dir_ / ("direct_s" + std::to_string(s) + ".csv")));
    }
}

TEST_F(CliTest, LandscapeSingleCell) {
    auto c = config();
    c.resolution = 1;
    c.fixed_value = 2.0;
    auto r = cmd_landscape(c, json_files(fixture_dir(), "hist_phys1a_h_"));
    auto j = io::read_json(dir_ / "landscape.json");
    EXPECT_EQ(j["strict_local_minima"].get<int>(), 0);
    std::string csv = slurp(dir_ / "landscape.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST_F(CliTest, LandscapeNeedsOneSector) {
    auto c = config();
    c.resolution = 4;
    c.fixed_value = 0.0;
    EXPECT_THROW(cmd_landscape(c, json_files(fixture_dir(), "hist_")), InputError);
    c.sector = model::Excitation::electron;
    EXPECT_NO_THROW(cmd_landscape(c, json_files(fixture_dir(), "hist_")));
}

TEST_F(CliTest, ExactDistMatchesReference) {
    auto c = config();
    c.shifts = {2};
    auto r = cmd_exact_dist(c);
    ASSERT_EQ(r.written.size(), 4u);
    auto d = c.dimer();
    auto gs = fci::ground_state(d);
    for (const auto &p : r.written) {
        auto h = io::histogram_from_json(io::read_json(p)).histogram;
        auto ref = vernier::reference_distribution(h.kappa, h.settings, fci::excitation_table(gs, d, h.xi));
        for (std::size_t j = 0; j < ref.size(); ++j) {
            EXPECT_NEAR(h.frequencies[j], ref[j], 1e-12);
        }
    }
}

}  // namespace
}  // namespace qavg::cli
