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

#ifndef QAVG_IO_HPP
#define QAVG_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qavg/fci.hpp"
#include "qavg/model.hpp"
#include "qavg/spectra.hpp"
#include "qavg/steane.hpp"
#include "qavg/vernier.hpp"

/// File formats. JSON documents keep insertion order so that a write, read,
/// write cycle is byte-identical.
namespace qavg::io {

using Json = nlohmann::ordered_json;

/// Path of the bundled Wannier parameter file: $QAVG_DATA_DIR when set, else
/// the installed copy, else the source tree.
std::filesystem::path bundled_wannier_path();

model::WannierSet wannier_from_json(const Json &j);
Json wannier_to_json(const model::WannierSet &w);
model::WannierSet load_wannier(const std::filesystem::path &path);

Json settings_to_json(const circuits::QpeSettings &s);
circuits::QpeSettings settings_from_json(const Json &j);

/// A histogram plus the resolved run configuration that produced it.
struct HistogramFile {
    vernier::Histogram histogram;
    Json config = Json::object();
};

Json histogram_to_json(const HistogramFile &h);
HistogramFile histogram_from_json(const Json &j);

Json params_to_json(const vernier::TrialParams &p);
vernier::TrialParams params_from_json(const Json &j);

Json fit_to_json(const vernier::FitResult &f, const Json &config);
vernier::FitResult fit_from_json(const Json &j);

Json fci_report(const model::DimerParams &d);

Json poles_to_json(const spectra::Spectrum &s);

/// Columns: E, rho_e, rho_h, rho_total.
std::string spectrum_csv(const spectra::Spectrum &s);
/// Columns named by the plane axes plus cost; trailing summary comment line.
std::string landscape_csv(const vernier::Landscape &l);
/// One row per checkpoint.
std::string survival_csv(const steane::SurvivalRecord &r);

Json read_json(const std::filesystem::path &path);
/// Two-space indented JSON followed by a newline.
std::string dump(const Json &j);
void write_text(const std::filesystem::path &path, const std::string &text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace qavg::io

#endif
