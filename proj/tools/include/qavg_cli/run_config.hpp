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


#ifndef QAVG_CLI_RUN_CONFIG_HPP
#define QAVG_CLI_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qavg/circuits.hpp"
#include "qavg/io.hpp"
#include "qavg/model.hpp"
#include "qavg/simulator.hpp"
#include "qavg/spectra.hpp"
#include "qavg/vernier.hpp"

namespace qavg::cli {

/// Everything one command needs. Resolution order: defaults, then the flat
/// JSON config file, then command-line flags.
struct RunConfig {
    double delta_mu = model::kDefaultDeltaMu;
    /// "reference" for the tabulated dimer, "wannier" to average a Wannier file.
    std::string params = "reference";
    /// Wannier JSON; empty selects the bundled file.
    std::string wannier_file;

    circuits::QpeSettings qpe;
    /// Shift indices to run; empty means all.
    std::vector<int> shifts;
    circuits::Variant variant = circuits::Variant::phys1a;
    sim::NoiseModel noise;
    std::uint64_t shots = 500;
    std::uint64_t seed = 1;

    vernier::OptimizeConfig optimizer;
    /// "centered" (on h0 of each sector) or "origin" (E_orig of shift 0).
    std::string window = "centered";

    int resolution = 200;
    vernier::Axis fixed_axis = vernier::Axis::theta;
    /// Value of the fixed landscape axis; unset means the optimized value.
    std::optional<double> fixed_value;
    /// Restricts landscape to one sector when the inputs hold both.
    std::optional<model::Excitation> sector;

    spectra::EnergyGrid grid;
    double delta = 0.02;

    // Not part of the embedded config: they do not change any output.
    unsigned threads = 0;
    std::filesystem::path out = ".";

    /// Flat JSON of every output-affecting field.
    io::Json to_json() const;
    /// Throws InputError on unknown keys, wrong types or invalid values.
    static RunConfig from_json(const io::Json &j);
    void validate() const;

    model::DimerParams dimer() const;
    /// Lower edge of the energy search window for one sector.
    double window_low(const model::QubitHamiltonian &h, const circuits::QpeSettings &s) const;
};

/// Overlays the keys of `overrides` onto `base`; both must be flat objects.
/// Unknown keys throw InputError.
io::Json merge_flat(io::Json base, const io::Json &overrides);

/// Splits "a,b,c" into its fields.
std::vector<std::string> split_list(const std::string &s);

}  // namespace qavg::cli

#endif
